"""Statistical evaluation and reproducibility verification for episodic
learning experiments.

The toolkit documents experiment configurations in canonical YAML, computes
windowed learning curves from per-episode run logs, bootstraps per-run
average returns into an empirical distribution, fits a small catalog of
parametric families by maximum likelihood, scores goodness of fit with the
one-sample Kolmogorov-Smirnov test, and turns a previously reported
single-run result into a probabilistic reproducibility verdict.
"""

__version__ = "0.1.0"
