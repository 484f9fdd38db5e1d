"""On-line coloring of bipartite graphs.

``graph_core`` holds the incremental graph and level components, ``engines``
the colorers, ``forcing`` the X_k family and adversaries, ``analysis`` and
``solver`` the checks, ``cli`` the command line.
"""

__version__ = "0.1.0"
