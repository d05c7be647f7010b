"""Bayesian-optimization engine, search-game service, and strategy analyzer.

Subpackages map onto the pipeline stages:

* :mod:`searchlab.testfns` -- 15 normalized 2D benchmark functions.
* :mod:`searchlab.kernels` / :mod:`searchlab.gp` -- GP surrogate.
* :mod:`searchlab.rf` -- random-forest surrogate.
* :mod:`searchlab.acquisition` -- PI / EI / UCB scoring.
* :mod:`searchlab.acqopt` -- focus-search inner optimizer, Latin hypercube.
* :mod:`searchlab.boloop` -- the BO loop, traces, regret metrics.
* :mod:`searchlab.compliance` -- strategy classification of recorded traces.
* :mod:`searchlab.gamestore` -- trace persistence and interchange format.
* :mod:`searchlab.service` -- HTTP session backend for the search game.
* :mod:`searchlab.cli` -- bench / simulate / analyze / report / serve commands.
"""

__version__ = "0.1.0"
