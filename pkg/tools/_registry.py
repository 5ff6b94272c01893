"""Static registry of toolkit modules, their core operations and the tools exposing them."""

from __future__ import annotations

MODULE_OPERATIONS: dict[str, list[str]] = {
    "hypergraph-core": [
        "parse_three_graph",
        "dump_three_graph",
        "parse_five_graph",
        "dump_five_graph",
        "codegree",
        "min_codegree",
        "induced",
        "union",
        "blow_up",
    ],
    "t-copies": [
        "enumerate_copies",
        "count_copies",
        "supports_T",
        "supporting_sets",
    ],
    "exact-tiler": [
        "perfect_tiling",
        "max_tiling",
        "all_perfect_tilings",
        "perfect_matching_5graph",
        "dh_condition_check",
        "auxiliary_matching_check",
        "colour_covering_hom",
        "rainbow_perfect_tiling",
    ],
    "fractional-lp": [
        "frac_perfect",
        "verify_certificate",
        "frac_min_pair_weight",
        "improve_pair_weight",
        "project_blow_up",
        "to_multigraph",
        "certificate_partition_audit",
    ],
    "structure-analysis": [
        "extremality",
        "classify_pairs",
        "pipeline_quantities",
        "extremal_case_tiling",
        "linked_count",
        "linkage_profile",
        "is_closed",
        "index_buckets",
        "abundant_vectors",
        "lattice_membership",
        "transferral_witness",
        "closure_hypothesis",
    ],
    "generators": [
        "gen_h_ext",
        "gen_complete",
        "gen_tripartite",
        "gen_random_codegree",
        "gen_support_5graph",
        "gen_rainbow_family",
    ],
    "cli-harness": [
        "run_scenarios",
        "summarize",
        "rows_to_csv",
    ],
}

MODULE_TOOLS: dict[str, list[str]] = {
    "hypergraph-core": ["graph_stats"],
    "t-copies": ["t_copies", "supports_t"],
    "exact-tiler": ["perfect_t_tiling", "max_t_tiling", "five_graph_matching", "colour_covering", "rainbow_tiling"],
    "fractional-lp": ["fractional_tiling", "check_certificate", "min_pair_weight"],
    "structure-analysis": ["extremality_check", "extremal_case", "linkedness", "index_lattice"],
    "generators": ["generate_graph"],
    "cli-harness": ["run_experiment"],
}
