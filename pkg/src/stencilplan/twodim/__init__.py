from .anneal import SaConfig, SaResult, sa_floorplan, shelf_sequence
from .cluster import ClusterNode, cluster, kd_range_query, merge, similar
from .kdtree import KdTree
from .pipeline import TwoDimConfig, pre_filter, solve_2d
from .seqpair import SequencePair, sp_pack

__all__ = [
    "ClusterNode", "KdTree", "SaConfig", "SaResult", "SequencePair", "TwoDimConfig", "cluster",
    "kd_range_query", "merge", "pre_filter", "sa_floorplan", "shelf_sequence", "similar", "solve_2d",
    "sp_pack",
]
