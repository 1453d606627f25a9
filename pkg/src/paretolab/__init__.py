"""pareto-lab: a many-objective optimization toolkit.

Library modules:

* :mod:`paretolab.dominance` — objective vectors, Pareto relations,
  non-dominance probabilities, and the naive non-dominated filter.
* :mod:`paretolab.landscapes` — seeded multi-objective NK-landscape
  instances: generation, evaluation, serialization, exhaustive analysis.
* :mod:`paretolab.archive` — Pareto archives behind interchangeable
  backends (list, ND-tree, quad-tree) with comparison counters.
* :mod:`paretolab.hypervolume` — exact hypervolume, contributions, and
  Monte-Carlo estimation with a Wilson-interval stopping rule.
* :mod:`paretolab.scalarization` — the general polyhedral scalarizing
  functional and its named specializations.
* :mod:`paretolab.weights` — simplex-lattice weight vectors and
  neighborhood distance statistics.
* :mod:`paretolab.experiments` — the reproducible experiment harness.
* :mod:`paretolab.cli` — the ``pareto-lab`` command-line entry point.

Hot kernels live in a compiled extension with a pure-Python fallback;
see :mod:`paretolab.kernels`.
"""

__version__ = "0.3.0"
