"""Command-line front end with stable exit codes and deterministic reports.

Subcommands::

    milnorbook check     GRAPH.json            fillability verdict
    milnorbook divisor   GRAPH.json            least-divisor certificate
    milnorbook openbook  GRAPH.json            full open-book report
    milnorbook contact   SUBCHECK [flags]      numerical verification

Exit codes: 0 success, 1 input error, 2 mathematical negative verdict,
3 internal invariant failure, 4 numerical finding.  Every report embeds
the package version and the full effective configuration; identical
invocations with identical seeds produce byte-identical output (reports
carry no timestamps).
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

from . import __version__
from .contact import (
    DEFAULT_ETA_FRACTION,
    check_spsh,
    eval_forms,
    find_adaptation_constant,
    lambda_cone_check,
    level_tangent_basis,
    openbook_criterion_check,
    rescaled_reeb_identity,
)
from .divisors import check_theorem_conditions, minimal_divisor, oracle_minimal_divisor
from .errors import (
    InputError,
    InternalInvariantError,
    NegativeVerdict,
    NumericalFinding,
    OnBinding,
)
from .graphs import is_milnor_fillable, load_graph
from .openbooks import ubiquitous_open_book
from .polynomials import parse_map, parse_polynomial
from .varieties import Hypersurface, SmoothChart, sample_points

import numpy as np

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERDICT = 2
EXIT_INTERNAL = 3
EXIT_FINDING = 4

# Fixed number of random tangent directions per sample in `contact spsh`.
SPSH_TRIALS = 20

# Near-proportionality cutoff for `contact cone`.
CONE_PROPORTIONALITY_TOL = 1e-3

# Tolerances for the `contact reeb` contract.
ALPHA_TOL_CHART = 1e-9
ALPHA_TOL_HYPERSURFACE = 1e-6
OMEGA_TOL = 1e-8

# Tolerances for the `contact identity` residuals.
IDENTITY_TOL = 1e-6
IDENTITY_TOL_UNSCALED = 1e-12  # the c = 0 case is exact cancellation


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with the input-error code."""

    def error(self, message):
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="milnorbook",
        description=(
            "Plumbing-graph fillability, canonical open book data, and "
            "contact-boundary numerics."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("text", "structured"),
        default="text",
        help="report format: human-readable text or JSON (default text)",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_check = sub.add_parser(
        "check", parents=[common], help="decide Milnor fillability of a graph"
    )
    p_check.add_argument("file", help="plumbing graph JSON file")

    p_div = sub.add_parser(
        "divisor", parents=[common], help="compute the least divisor certificate"
    )
    p_div.add_argument("file", help="plumbing graph JSON file")
    p_div.add_argument(
        "--oracle",
        action="store_true",
        help="cross-check against the exhaustive search oracle",
    )
    p_div.add_argument(
        "--bound", type=int, default=40, help="oracle search box bound (default 40)"
    )

    p_ob = sub.add_parser(
        "openbook", parents=[common], help="build the canonical open book data"
    )
    p_ob.add_argument("file", help="plumbing graph JSON file")
    p_ob.add_argument(
        "--emit",
        choices=("text", "graph"),
        default="text",
        help="also emit the decorated graph as JSON with --emit graph",
    )

    p_c = sub.add_parser(
        "contact", parents=[common], help="numerical contact-boundary checks"
    )
    p_c.add_argument(
        "subcheck",
        choices=("spsh", "reeb", "identity", "adapt", "cone", "criterion"),
        help="which verification to run",
    )
    p_c.add_argument(
        "--hypersurface",
        metavar="EXPR",
        help="defining polynomial of a hypersurface germ (variables inferred)",
    )
    p_c.add_argument(
        "--ambient",
        type=int,
        metavar="N",
        help="chart dimension for a smooth-chart germ (default 2)",
    )
    p_c.add_argument(
        "--map",
        metavar="EXPRS",
        help="comma-separated chart components (default: identity map)",
    )
    p_c.add_argument("--f", metavar="EXPR", help="fibration function for theta checks")
    p_c.add_argument("--epsilon", type=float, default=0.01, help="level value")
    p_c.add_argument(
        "--eta",
        type=float,
        default=None,
        help="binding cutoff (default 1e-4 * max |f|^2 on the mesh)",
    )
    p_c.add_argument("--c", type=float, default=1.0, help="rescaling constant")
    p_c.add_argument("--samples", type=int, default=200, help="sample count")
    p_c.add_argument("--mesh", type=int, default=10000, help="mesh size")
    p_c.add_argument("--seed", type=int, default=0, help="random seed")
    return parser


def _infer_n_vars(text: str) -> int:
    indices = [int(m) for m in re.findall(r"z(\d+)", text)]
    if not indices:
        raise InputError(f"no variables found in {text!r}")
    return max(indices) + 1


def _build_variety(args):
    """Variety model plus the number of coordinates its points carry."""
    if args.hypersurface is not None and (
        args.map is not None or args.ambient is not None
    ):
        raise InputError("choose either --hypersurface or --ambient/--map, not both")
    if args.hypersurface is not None:
        n = _infer_n_vars(args.hypersurface)
        surface = Hypersurface(parse_polynomial(args.hypersurface, n))
        return surface, n
    dim = args.ambient if args.ambient is not None else 2
    if args.map is not None:
        return SmoothChart(dim, parse_map(args.map, dim)), dim
    return SmoothChart.identity(dim), dim


def _require_f(args, n_vars):
    if args.f is None:
        raise InputError(f"contact {args.subcheck} requires --f")
    return parse_polynomial(args.f, n_vars)


def _cmd_check(args):
    graph = load_graph(args.file)
    fillable = is_milnor_fillable(graph)
    result = {
        "fillable": fillable,
        "vertices": graph.vertex_count,
        "edges": len(graph.edges),
    }
    verdict = (
        "Milnor fillable (intersection form negative definite)"
        if fillable
        else "not Milnor fillable (intersection form not negative definite)"
    )
    lines = [f"verdict: {verdict}"]
    return {"file": args.file}, result, lines, EXIT_OK if fillable else EXIT_VERDICT


def _cmd_divisor(args):
    graph = load_graph(args.file)
    divisor = minimal_divisor(graph)
    report = check_theorem_conditions(graph, divisor)
    result = report.to_dict()
    lines = [
        f"divisor: {list(divisor.multiplicities)}",
        f"multiplicities: {list(report.multiplicities.counts)}",
        f"slack: {list(report.inequality_slack)}",
        f"automorphism invariant: {report.aut_invariant}",
    ]
    if args.oracle:
        oracle = oracle_minimal_divisor(graph, args.bound)
        if oracle != divisor:
            raise InternalInvariantError(
                f"descent found {list(divisor.multiplicities)} but the "
                f"bound-{args.bound} search found {list(oracle.multiplicities)}"
            )
        result["oracle"] = {"bound": args.bound, "agrees": True}
        lines.append(f"oracle (bound {args.bound}): agrees")
    config = {"file": args.file, "oracle": args.oracle, "bound": args.bound}
    return config, result, lines, EXIT_OK


def _cmd_openbook(args):
    graph = load_graph(args.file)
    report = ubiquitous_open_book(graph)
    result = report.to_dict()
    lines = [
        f"binding components: {report.binding_components}",
        f"divisor: {list(report.divisor.multiplicities)}",
        f"arrowheads: {list(report.graph.arrowheads)}",
        f"automorphism invariant: {report.aut_invariant}",
        f"commentary: {report.commentary}",
        "decorated graph:",
    ]
    lines.extend("  " + line for line in report.graph.to_text().splitlines())
    if args.emit == "graph":
        decorated = {
            "vertices": [
                {
                    "id": i,
                    "genus": report.graph.base.genus[i],
                    "euler": report.graph.base.euler[i],
                    "arrowheads": report.graph.arrowheads[i],
                }
                for i in range(report.graph.base.vertex_count)
            ],
            "edges": [list(edge) for edge in report.graph.base.edges],
        }
        result["decorated_graph"] = decorated
        lines.append("decorated graph JSON:")
        lines.append(json.dumps(decorated, sort_keys=True))
    config = {"file": args.file, "emit": args.emit}
    return config, result, lines, EXIT_OK


def _contact_config(args, variety, n_vars):
    return {
        "subcheck": args.subcheck,
        "variety": repr(variety),
        "coordinates": n_vars,
        "f": args.f,
        "epsilon": args.epsilon,
        "eta": args.eta,
        "c": args.c,
        "samples": args.samples,
        "mesh": args.mesh,
        "seed": args.seed,
    }


def _cmd_contact(args):
    variety, n_vars = _build_variety(args)
    config = _contact_config(args, variety, n_vars)
    sub = args.subcheck

    if sub == "spsh":
        samples = sample_points(variety, args.epsilon, args.samples, args.seed)
        minimum = check_spsh(variety, samples, trials=SPSH_TRIALS, seed=args.seed)
        passed = minimum > 0.0
        result = {
            "min_levi_quotient": minimum,
            "samples": len(samples),
            "trials": SPSH_TRIALS,
            "pass": passed,
        }
        lines = [
            f"min Levi quotient over {len(samples)} samples x {SPSH_TRIALS} "
            f"directions: {minimum!r}",
            f"strictly plurisubharmonic on the sample set: {passed}",
        ]
        return config, result, lines, EXIT_OK if passed else EXIT_FINDING

    if sub == "reeb":
        samples = sample_points(variety, args.epsilon, args.samples, args.seed)
        alpha_tol = (
            ALPHA_TOL_HYPERSURFACE
            if isinstance(variety, Hypersurface)
            else ALPHA_TOL_CHART
        )
        max_alpha = 0.0
        max_omega = 0.0
        for p in samples:
            forms = eval_forms(variety, p)
            reeb_real = np.concatenate([forms.reeb.real, forms.reeb.imag])
            max_alpha = max(max_alpha, abs(float(forms.alpha @ reeb_real) - 1.0))
            level = level_tangent_basis(variety, p)
            pairings = np.abs(reeb_real @ forms.omega @ level)
            max_omega = max(max_omega, float(pairings.max()))
        passed = max_alpha <= alpha_tol and max_omega <= OMEGA_TOL
        result = {
            "max_alpha_deviation": max_alpha,
            "alpha_tolerance": alpha_tol,
            "max_omega_pairing": max_omega,
            "omega_tolerance": OMEGA_TOL,
            "samples": len(samples),
            "pass": passed,
        }
        lines = [
            f"max |alpha(R) - 1| over {len(samples)} samples: {max_alpha!r} "
            f"(tolerance {alpha_tol!r})",
            f"max |omega(R, v)| over level-tangent directions: {max_omega!r} "
            f"(tolerance {OMEGA_TOL!r})",
            f"Reeb contract satisfied: {passed}",
        ]
        return config, result, lines, EXIT_OK if passed else EXIT_FINDING

    if sub == "identity":
        f = _require_f(args, n_vars)
        samples = sample_points(variety, args.epsilon, args.samples, args.seed)
        residuals = []
        skipped = 0
        for p in samples:
            try:
                residuals.append(rescaled_reeb_identity(variety, f, args.c, p))
            except OnBinding:
                skipped += 1
        if not residuals:
            raise NumericalFinding("every sample landed on the binding")
        tolerance = IDENTITY_TOL_UNSCALED if args.c == 0.0 else IDENTITY_TOL
        worst = max(residuals)
        passed = worst <= tolerance
        result = {
            "max_residual": worst,
            "tolerance": tolerance,
            "evaluated": len(residuals),
            "skipped_on_binding": skipped,
            "pass": passed,
        }
        lines = [
            f"max rescaled-Reeb identity residual over {len(residuals)} "
            f"samples (c={args.c!r}): {worst!r} (tolerance {tolerance!r})",
            f"identity satisfied: {passed}",
        ]
        return config, result, lines, EXIT_OK if passed else EXIT_FINDING

    if sub == "adapt":
        f = _require_f(args, n_vars)
        report = find_adaptation_constant(
            variety, f, args.epsilon, args.eta, args.mesh, args.seed
        )
        result = report.to_dict()
        result["pass"] = report.verified
        lines = [
            f"adaptation constant c = {report.c!r} (m = {report.m!r}, "
            f"k = {report.k!r})",
            f"retained {report.retained} of {report.mesh} mesh points "
            f"(eta = {report.eta!r})",
            f"min d theta(R) = {report.min_dtheta_reeb!r}",
            f"min d theta(R_c) = {report.min_dtheta_rescaled!r}",
            f"verified d theta(R_c) > 0 everywhere: {report.verified}",
        ]
        return config, result, lines, EXIT_OK if report.verified else EXIT_FINDING

    if sub == "cone":
        f = _require_f(args, n_vars)
        samples = sample_points(variety, args.epsilon, args.samples, args.seed)
        report = lambda_cone_check(
            variety, f, samples, proportionality_tol=CONE_PROPORTIONALITY_TOL
        )
        failed = report.all_positive is False
        result = report.to_dict()
        result["pass"] = not failed
        lines = [
            f"qualifying samples: {report.qualifying} of {report.total} "
            f"(proportionality tolerance {report.proportionality_tol!r}, "
            f"{report.skipped_on_binding} skipped on the binding)",
        ]
        if report.qualifying:
            lines.append(f"min Re lambda = {report.min_re_lambda!r}")
            lines.append(f"max |arg lambda| = {report.max_abs_arg_lambda!r}")
            lines.append(f"all qualifying lambda in the right half plane: "
                         f"{report.all_positive}")
        else:
            lines.append(report.note)
        return config, result, lines, EXIT_FINDING if failed else EXIT_OK

    if sub == "criterion":
        f = _require_f(args, n_vars)
        report = openbook_criterion_check(
            variety, f, args.epsilon, args.eta, args.mesh, args.seed
        )
        failed = (
            not report.first_vacuous
            and (report.min_dtheta_norm is None or report.min_dtheta_norm <= 0.0)
        ) or (
            not report.second_vacuous
            and (report.min_df_norm is None or report.min_df_norm <= 0.0)
        )
        result = report.to_dict()
        result["pass"] = not failed
        lines = [
            f"mesh {report.mesh} at epsilon {report.epsilon!r}, "
            f"eta {report.eta!r}",
            (
                "min ||d theta|level|| on {|f| >= eta}: "
                + (
                    "vacuous (no mesh points)"
                    if report.first_vacuous
                    else repr(report.min_dtheta_norm)
                )
                + f" ({report.outside_count} points)"
            ),
            (
                "min ||d f|level|| on {|f| <= eta}: "
                + (
                    "vacuous (no mesh points)"
                    if report.second_vacuous
                    else repr(report.min_df_norm)
                )
                + f" ({report.inside_count} points)"
            ),
            f"open-book transversality certified on the mesh: {not failed}",
        ]
        return config, result, lines, EXIT_FINDING if failed else EXIT_OK

    raise InputError(f"unknown contact subcheck {sub!r}")


_HANDLERS = {
    "check": _cmd_check,
    "divisor": _cmd_divisor,
    "openbook": _cmd_openbook,
    "contact": _cmd_contact,
}


def _emit(command, config, result, lines, fmt, stream):
    if fmt == "structured":
        document = {
            "version": __version__,
            "command": command,
            "config": config,
            "result": result,
        }
        stream.write(json.dumps(document, sort_keys=True, indent=2) + "\n")
    else:
        header = f"milnorbook {__version__} {command}"
        rendered_config = " ".join(
            f"{key}={config[key]!r}" for key in sorted(config)
        )
        stream.write(header + "\n")
        stream.write(f"config: {rendered_config}\n")
        for line in lines:
            stream.write(line + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config, result, lines, code = _HANDLERS[args.command](args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NegativeVerdict as exc:
        print(f"negative verdict: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    except InternalInvariantError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except NumericalFinding as exc:
        print(f"numerical finding: {exc}", file=sys.stderr)
        return EXIT_FINDING
    config["format"] = args.format
    _emit(args.command, config, result, lines, args.format, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
