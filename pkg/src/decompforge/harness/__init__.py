from decompforge.harness.certificates import (
    certificate_document,
    reload_and_verify,
    verify_certificate,
    write_certificate,
)
from decompforge.harness.experiment import (
    ExperimentConfig,
    InstanceSpec,
    RunReport,
    experiment_from_dict,
    load_experiment,
)
from decompforge.harness.generators import (
    GENERATORS,
    TridivisibleEdit,
    generate,
    generate_codegree_3graph,
    generate_dense_graph,
    generate_latin_instance,
    generate_parity_barrier,
    generate_steiner_instance,
    make_tridivisible,
)
from decompforge.harness.oracle import exact_triangle_decomposition

__all__ = [
    "GENERATORS",
    "ExperimentConfig",
    "InstanceSpec",
    "RunReport",
    "TridivisibleEdit",
    "certificate_document",
    "exact_triangle_decomposition",
    "experiment_from_dict",
    "generate",
    "generate_codegree_3graph",
    "generate_dense_graph",
    "generate_latin_instance",
    "generate_parity_barrier",
    "generate_steiner_instance",
    "load_experiment",
    "make_tridivisible",
    "reload_and_verify",
    "verify_certificate",
    "write_certificate",
]
