"""Footstep planning with homotopy-class-guided heuristics.

The toolkit builds multi-level 2D world models (surfaces, beams, gates),
derives heuristic functions from user-supplied reference paths via a
resumable goal-rooted Dijkstra over an augmented workspace graph, and
plans discretized footstep paths with a shared multi-heuristic A*.
"""

__version__ = "0.1.0"
