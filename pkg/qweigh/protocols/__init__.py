from .reports import RunReport, BoundsReport, SlsBoundsReport, reports_to_frame
from .bounds import wm_budget, classical_bounds, sls_classical_budget, sls_bounds, corollary_family
from .protocols import wm_recover, bv_recover, inner_product_table, sls_quantum, sls_quantum_branches
from .protocols import shifted_legendre_table, sls_psi_basis, SlsBranch
from .classical import SlsState, SlsSolver, sls_classical
from .trees import TreeNode, DecisionTree, optimal_tree, family_tables, sls_family
