"""River stretches long enough to cover a whole BFS ball of the topograph."""

from __future__ import annotations

from qriver.errors import BudgetExceeded
from qriver.topograph import river_segment, topograph_ball


def river_in_ball(form, depth: int, max_steps: int = 4096):
    """The river path, cut down to the edges inside the depth-``depth`` ball.

    The topograph is a tree and the ball a subtree, so the river meets the
    ball in one contiguous stretch. Once a walked segment enters the ball and
    both of its ends lie outside, that stretch is complete. Returns the full
    segment and the list of in-ball edge keys in walking order.
    """
    ball = topograph_ball(depth)
    n = 16
    while n <= max_steps:
        path = river_segment(form, n, n)
        keys = path.keys()
        inside = [k for k in keys if k in ball]
        if inside and keys[0] not in ball and keys[-1] not in ball:
            return path, inside
        n *= 2
    if not inside:
        return path, []
    raise BudgetExceeded(f"river of {form} did not cross the ball within {max_steps} steps")
