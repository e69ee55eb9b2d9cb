"""Complex-space side: density operators, charts, MUBs and entropies."""

from .bipartite import (
    conditional_entropy,
    entanglement_entropy,
    partial_trace,
    quantum_discord,
    relative_entropy,
)
from .charts import (
    Chart,
    SingularChart,
    canonical_chart,
    chart_entropy_of,
    chart_overlap,
    chart_working,
    induced_distribution,
    reverse_transcribe,
)
from .measurement import (
    cluster_entropy,
    entropic_bounds,
    povm_entropy,
    povm_independent,
    random_povm,
    von_neumann_povm,
)
from .mub import mub_cluster, qubit_charts
from .operators import (
    DensityOperator,
    Gauge,
    HermitianObservable,
    HilbertPovm,
    apply_channel,
    born_expectation,
    diagonal_observable,
    effect_probability,
    transcribe_mixed,
    transcribe_pure,
    von_neumann_entropy,
)
