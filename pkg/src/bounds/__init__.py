"""Product bounds, ratio sequences and Stirling asymptotics"""
from .table import BoundRow, BoundTable
from .products import LabeledCount, labeled_count, product_bound
from .sequences import SequenceKind, ratio_sequence
from .asymptotics import stirling_asymptotics_report
