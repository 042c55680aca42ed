from dynkcenter import EuclideanMetric, TimedPoint


def line_points(coords_times):
    """[(id, x, t_arr, t_del), ...] -> points on the real line."""
    return [TimedPoint(i, (float(x),), ta, td) for i, x, ta, td in coords_times]


def line_metric():
    return EuclideanMetric(1)
