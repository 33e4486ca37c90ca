from src.core.solver.enums import BoundaryKind, DerivativeSource
from src.core.solver.grid import Grid
from src.core.solver.boundary import BoundaryCondition, BoundaryConditions
from src.core.solver.ibvp import solve_ibvp, stability_limit
from src.core.solver.convergence import ManufacturedStudy, convergence_order, manufactured_study
from src.core.solver.residual import EQUATIONS, ResidualReport, fd_jet, residual_refinement, residual_scan

__all__ = [
    "BoundaryKind",
    "DerivativeSource",
    "Grid",
    "BoundaryCondition",
    "BoundaryConditions",
    "solve_ibvp",
    "stability_limit",
    "ManufacturedStudy",
    "convergence_order",
    "manufactured_study",
    "EQUATIONS",
    "ResidualReport",
    "fd_jet",
    "residual_refinement",
    "residual_scan",
]
