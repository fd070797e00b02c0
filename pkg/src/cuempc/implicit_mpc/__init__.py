"""Online nonlinear MPC: transcription, SQP solver, QP subproblems, warm starts."""

from .qp import QpResult, solve_qp, solve_qp_elastic  # noqa: F401
