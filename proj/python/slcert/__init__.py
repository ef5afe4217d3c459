"""Python bindings for the slcert certification library."""

import json

from . import _core
from ._core import (
    __version__,
    admissible_radius,
    boundary_s_from_p,
    canonical_tangent,
    gradient,
    margin8,
    margin10,
    margin11,
    margin12,
    membership,
    phi,
    quadratic_criterion_margin,
    r_eps,
)

EXIT_PASS, EXIT_VIOLATION, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class Outcome:
    def __init__(self, exit_code, report_json, csv):
        self.exit_code = exit_code
        self.report = json.loads(report_json)
        self.csv = csv

    @property
    def passed(self):
        return self.exit_code == EXIT_PASS

    def __repr__(self):
        return f"Outcome(exit_code={self.exit_code}, command={self.report.get('command')!r})"


def certify(eps=0.25, grid=200, method="closed", seed=0, richardson=False):
    return Outcome(*_core.certify(eps, grid, method, seed, richardson))


def slice(eps=0.25, lines=200, res=256, seed=42):
    return Outcome(*_core.slice(eps, lines, res, seed))


def exhaust(eps_list=(0.4, 0.2, 0.1, 0.05, 0.01), samples=10000, seed=42):
    return Outcome(*_core.exhaust(list(eps_list), samples, seed))


def witness(eps=0.01, mode="nonconvex-D", samples=1000000, seed=42):
    return Outcome(*_core.witness(eps, mode, samples, seed))
