"""Hamiltonicity and its resilience in random graphs, checked numerically.

The public surface re-exports the main entry points of each submodule.
"""

from .adversary import (AttackFailure, DeletionPlan, ResidualReport, bipartition_attack,
                        greedy_min_degree_attack, is_unbalanced_bipartite, random_attack,
                        residual_check, validate_plan)
from .expander import (ExpanderVerdict, SparseExpanderExtract, check_2k_expander, check_two_expander,
                       extract_min_degree_subgraph, extract_sparse_expander, sparsify)
from .graph import Graph, edges_between, induced, parse_edge_list, format_edge_list
from .kcore import CoreResult, brute_force_core, k_core
from .lab import ExperimentConfig, TrialRecord, aggregate, load_results, run_experiment, write_results
from .oracles import exact_longest_path, exact_max_cut, held_karp_hamiltonian, local_max_cut
from .posa import (BoosterSet, BuildFailure, RotationFamily, build_hamilton, find_boosters_paired,
                   find_boosters_single, longest_path_heuristic, rotate, rotation_closure,
                   verify_hamilton)
from .random_models import (GraphProcess, hitting_time_kcore, hitting_time_min_degree, sample_gnm,
                            sample_gnp)

__version__ = "0.1.0"
