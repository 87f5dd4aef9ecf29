"""Command-line front end: runs the verification suites and emits reports.

Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage error.
Reports are deterministic for a fixed config and seed except for the
``timing`` header, which golden-file consumers should mask.
"""

from __future__ import annotations

import csv
import io
import json
import sys
import time
from datetime import datetime, timezone

import click
import numpy as np

from . import __version__
from .clifford import (build_u1, build_u2, build_u_gauged, phi1_table,
                       phi2_table, phi_gauged_table, verify_automorphism)
from .dense import (DenseOperator, DimensionCapError, StateVector, _cap,
                    hermitian_eigensolve, materialize, random_state,
                    transition_experiment, write_dense_binary, write_dense_csv)
from .gauge import (ancilla_sector_embedding, build_d_hat,
                    build_d_noninvertible, embed_state, gauss_sector_projector,
                    sector_blocks, spectral_equivalence_check)
from .models import (Family, ModelSpec, build_hamiltonian, eta_conservation,
                     projected_commutation_check)
from .pauli import ancilla_layout, symmetry_projector


def _frob(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def _comm_norm(a: DenseOperator, b: DenseOperator) -> float:
    return _frob(a.matrix @ b.matrix - b.matrix @ a.matrix)


def _check(name: str, measured: float, threshold: float,
           above: bool = False) -> dict:
    ok = measured > threshold if above else measured < threshold
    return {"name": name, "status": "pass" if ok else "fail",
            "measured": measured, "threshold": threshold}


def _skip(name: str, reason: str) -> dict:
    return {"name": name, "status": "skipped", "measured": None,
            "threshold": None, "reason": reason}


def _bool_check(name: str, ok: bool, measured=None) -> dict:
    return {"name": name, "status": "pass" if ok else "fail",
            "measured": measured, "threshold": None}


# ---------------------------------------------------------------------------
# check batteries (shared between individual commands and full-suite)
# ---------------------------------------------------------------------------

_CIRCUITS = {"u1": (build_u1, phi1_table), "u2": (build_u2, phi2_table),
             "u-gauged": (build_u_gauged, phi_gauged_table)}

_MODELS = {f.value: f for f in Family}


def automorphism_checks(circuit: str, L: int) -> list[dict]:
    build, table = _CIRCUITS[circuit]
    report = verify_automorphism(build(L), table(L))
    out = []
    for e in report["entries"]:
        out.append(_bool_check(f"{circuit}: {e['generator']} -> {e['expected']}",
                               e["ok"]))
    return out


def _dense_ok(total_sites: int, kind: str = "string") -> bool:
    return total_sites <= _cap(kind)


def commutator_checks(L: int, tol_scale: float = 1.0,
                      flip_boundary: bool = False) -> list[dict]:
    out = []
    for fam, ok in eta_conservation(L).items():
        out.append(_bool_check(f"symbolic [{fam}, eta] = 0", ok))
    for sign in (1, -1):
        out.append(_bool_check(
            f"symbolic (U2 H U2_dag) P = H P for sign {sign:+d}",
            projected_commutation_check(L, sign)["passed"]))
    if not _dense_ok(L + 1, "circuit"):
        out.append(_skip("dense commutators", "dimension cap"))
        return out

    u1 = materialize(build_u1(L))
    u2 = materialize(build_u2(L))
    ug = materialize(build_u_gauged(L))
    h1 = materialize(build_hamiltonian(ModelSpec(Family.OPEN_H1, L)))
    h2 = materialize(build_hamiltonian(ModelSpec(Family.SELF_DUAL_CLOSED_H2, L)))
    hg = materialize(build_hamiltonian(ModelSpec(Family.MINIMAL_GAUGED_HG, L)))

    def conserved(name, h, u):
        tol = 1e-10 * max(_frob(h.matrix) * _frob(u.matrix), 1.0) * tol_scale
        out.append(_check(name, _comm_norm(h, u), tol))

    conserved("[H1, U1]", h1, u1)
    conserved("[H2, U2]", h2, u2)
    conserved("[H_G, U_gauged]", hg, ug)
    for sign, fam in ((1, Family.PERIODIC_H_PLUS), (-1, Family.ANTIPERIODIC_H_MINUS)):
        boundary_fam = fam
        if flip_boundary and sign == 1:
            boundary_fam = Family.ANTIPERIODIC_H_MINUS  # injected fault
        h = materialize(build_hamiltonian(ModelSpec(boundary_fam, L)))
        d = build_d_noninvertible(L, sign)
        conserved(f"[H{'+' if sign > 0 else '-'}, D{'+' if sign > 0 else '-'}]", h, d)
        dh = build_d_hat(L, sign)
        conserved(f"[H_G, D_hat{'+' if sign > 0 else '-'}]", hg, dh)
        out.append(_check(f"[H{'+' if sign > 0 else '-'}, U2] nonzero",
                          _comm_norm(h, u2), 0.1, above=True))
    return out


def _seeded_pairs(dim: int, seed: int, count: int) -> list[tuple[StateVector, StateVector]]:
    return [(random_state(dim, 2 * seed + 1000 * k),
             random_state(dim, 2 * seed + 1000 * k + 1)) for k in range(count)]


def transition_checks(L: int, sign: int, seed: int, pairs: int = 100,
                      tol_scale: float = 1.0,
                      nontrivial_projector: bool = False) -> list[dict]:
    out = []
    if not _dense_ok(L + 1, "circuit"):
        return [_skip("transition checks", "dimension cap")]
    d = build_d_noninvertible(L, sign)
    if L >= 2:
        basis0 = StateVector(np.eye(1 << L)[:, 0])
        rep = transition_experiment(d, [(basis0, basis0)])
        measured = rep["pairs"][0]["p_transformed"]
        out.append(_check("counterexample |<0..0|P|0..0>|^2 = 0.25",
                          abs(measured - 0.25), 1e-12 * tol_scale))
        out.append(_check("counterexample reference = 1",
                          abs(rep["pairs"][0]["p_reference"] - 1.0), 1e-12))
    rep = transition_experiment(d, _seeded_pairs(1 << L, seed, pairs))
    out.append(_check("D on matter space violates probabilities",
                      rep["max_deviation"], 0.05, above=True))

    emb = ancilla_sector_embedding(L, sign)
    if nontrivial_projector:
        # injected fault: replace the ancilla projector by the matter-space
        # eta projector, which acts nontrivially inside the embedded space
        u = materialize(build_u_gauged(L))
        p = materialize(symmetry_projector(sign, ancilla_layout(L)))
        d_hat = DenseOperator(u.matrix @ p.matrix)
        d_hat_anti = DenseOperator(d_hat.matrix, antilinear=True)
    else:
        d_hat = build_d_hat(L, sign)
        d_hat_anti = build_d_hat(L, sign, antilinear=True)
    epairs = [(embed_state(a, emb), embed_state(b, emb))
              for a, b in _seeded_pairs(1 << L, seed + 7, pairs)]
    rep = transition_experiment(d_hat, epairs)
    out.append(_check("D_hat preserves embedded probabilities (linear)",
                      rep["max_deviation"], 1e-11 * tol_scale))
    rep = transition_experiment(d_hat_anti, epairs)
    out.append(_check("D_hat preserves embedded probabilities (antilinear)",
                      rep["max_deviation"], 1e-11 * tol_scale))
    return out


def polar_checks(L: int, sign: int, seed: int, tol_scale: float = 1.0) -> list[dict]:
    from .polar import corollary_check, polar_decompose, verify_theorem_structure
    out = []
    if not _dense_ok(L + 1, "circuit"):
        return [_skip("polar checks", "dimension cap")]
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(2, 17))
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        f = polar_decompose(m)
        worst = max(worst, _frob(f.unitary_part.matrix @ f.psd_part.matrix - m))
    out.append(_check("polar reconstruction on random matrices", worst,
                      1e-9 * tol_scale))

    d_hat = build_d_hat(L, sign)
    emb = ancilla_sector_embedding(L, sign)
    rep = verify_theorem_structure(d_hat, emb.isometry)
    out.append(_bool_check(f"D_hat rank = {1 << L}", rep["rank"] == 1 << L,
                           rep["rank"]))
    out.append(_bool_check("D_hat non-invertible", not rep["invertible"]))
    out.append(_check("PSD factor acts as identity on embedded space",
                      rep["block_identity_error"], 1e-9 * tol_scale))
    out.append(_check("PSD^2 block off-diagonals vanish",
                      rep["offdiag_error"], 1e-9 * tol_scale))
    out.append(_check("P_H P_hat = P_hat P_H = P_H",
                      rep["projector_identity_error"], 1e-9 * tol_scale))

    d = build_d_noninvertible(L, sign)
    full = np.eye(1 << L, dtype=complex)
    neg = verify_theorem_structure(d, full)
    out.append(_bool_check("D on matter space fails the identity-block check",
                           neg["block_identity_error"] > 1e-3,
                           neg["block_identity_error"]))

    hg = materialize(build_hamiltonian(ModelSpec(Family.MINIMAL_GAUGED_HG, L)))
    cor = corollary_check(hg, d_hat, emb.isometry, tol=1e-9 * tol_scale)
    if cor["status"] == "skipped":
        out.append(_skip("corollary P_H [H_G, U_hat] P_H", cor["reason"]))
    else:
        out.append(_check("corollary P_H [H_G, U_hat] P_H", cor["measured"],
                          cor["threshold"]))
    return out


def gauge_checks(L: int, tol_scale: float = 1.0) -> list[dict]:
    out = []
    if L > 5 or not _dense_ok(2 * L, "string"):
        return [_skip("gauge-equivalence", "dimension cap")]
    res = spectral_equivalence_check(L)
    out.append(_bool_check(
        f"spectral equivalence with uniform factor {res['predicted_factor']}",
        res["equivalent"] and res["uniform_factor"] == res["predicted_factor"],
        res["uniform_factor"]))
    proj = gauss_sector_projector(L)
    out.append(_check("gauss projector trace = 2^L",
                      abs(float(np.trace(proj.matrix).real) - (1 << L)),
                      1e-9 * tol_scale))
    out.append(_check("gauss projector idempotent",
                      _frob(proj.matrix @ proj.matrix - proj.matrix),
                      1e-12 * (1 << L) * tol_scale))
    h_full = materialize(build_hamiltonian(ModelSpec(Family.FULLY_GAUGED_HG, L)))
    out.append(_check("[H_full_gauged, gauss projector]",
                      _comm_norm(h_full, proj),
                      1e-10 * max(_frob(h_full.matrix), 1.0) * tol_scale))
    hg = materialize(build_hamiltonian(ModelSpec(Family.MINIMAL_GAUGED_HG, L)))
    blk_p, blk_m = sector_blocks(hg, L)
    hp = materialize(build_hamiltonian(ModelSpec(Family.PERIODIC_H_PLUS, L)))
    hm = materialize(build_hamiltonian(ModelSpec(Family.ANTIPERIODIC_H_MINUS, L)))
    out.append(_check("H_G (+) block equals H+",
                      float(np.abs(blk_p - hp.matrix).max()), 1e-12))
    out.append(_check("H_G (-) block equals H-",
                      float(np.abs(blk_m - hm.matrix).max()), 1e-12))
    return out


# ---------------------------------------------------------------------------
# report assembly and output
# ---------------------------------------------------------------------------

def _emit(command: str, config: dict, checks: list[dict],
          fmt: str, out_path: str | None, started: float,
          extra: dict | None = None) -> int:
    report = {
        "command": command,
        "config": config,
        "version": __version__,
        "checks": checks,
        "timing": {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "wall_s": time.monotonic() - started,
        },
    }
    if extra:
        report.update(extra)
    if fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["name", "status", "measured", "threshold"])
        for c in checks:
            writer.writerow([c["name"], c["status"], c["measured"], c["threshold"]])
        text = buf.getvalue()
    else:
        lines = []
        for c in checks:
            mark = {"pass": "PASS", "fail": "FAIL", "skipped": "SKIP"}[c["status"]]
            detail = "" if c["measured"] is None else \
                f"  measured={c['measured']!r} threshold={c['threshold']!r}"
            lines.append(f"{mark}  {c['name']}{detail}")
        lines.append(f"{sum(c['status'] == 'pass' for c in checks)} passed, "
                     f"{sum(c['status'] == 'fail' for c in checks)} failed, "
                     f"{sum(c['status'] == 'skipped' for c in checks)} skipped")
        text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    return 1 if any(c["status"] == "fail" for c in checks) else 0


def _common(f):
    f = click.option("--L", "L", type=int, default=3, show_default=True)(f)
    f = click.option("--sign", type=click.Choice(["+", "-"]), default="+",
                     show_default=True)(f)
    f = click.option("--seed", type=int, default=0, show_default=True)(f)
    f = click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]),
                     default="json", show_default=True)(f)
    f = click.option("--out", "out_path", type=click.Path(), default=None)(f)
    f = click.option("--tol-scale", type=float, default=1.0, show_default=True)(f)
    return f


@click.group()
@click.version_option(__version__)
def main() -> None:
    """Verification suites for duality circuits and non-invertible symmetries."""


@main.command("verify-automorphism")
@click.option("--circuit", type=click.Choice(sorted(_CIRCUITS)), required=True)
@_common
def cmd_verify_automorphism(circuit, L, sign, seed, fmt, out_path, tol_scale):
    """Check a duality circuit against its generator table, symbolically."""
    if L < 2:
        raise click.UsageError("L must be >= 2")
    started = time.monotonic()
    checks = automorphism_checks(circuit, L)
    config = {"circuit": circuit, "L": L, "seed": seed, "tol_scale": tol_scale}
    sys.exit(_emit("verify-automorphism", config, checks, fmt, out_path, started))


@main.command("commutators")
@_common
def cmd_commutators(L, sign, seed, fmt, out_path, tol_scale):
    """Conservation and non-conservation commutator battery."""
    if L < 2:
        raise click.UsageError("L must be >= 2")
    started = time.monotonic()
    checks = commutator_checks(L, tol_scale)
    config = {"L": L, "seed": seed, "tol_scale": tol_scale}
    sys.exit(_emit("commutators", config, checks, fmt, out_path, started))


@main.command("transition-check")
@click.option("--pairs", type=int, default=100, show_default=True)
@_common
def cmd_transition_check(pairs, L, sign, seed, fmt, out_path, tol_scale):
    """Probability violation on the matter space vs preservation when gauged."""
    if L < 2:
        raise click.UsageError("L must be >= 2")
    started = time.monotonic()
    s = 1 if sign == "+" else -1
    checks = transition_checks(L, s, seed, pairs, tol_scale)
    config = {"L": L, "sign": sign, "seed": seed, "pairs": pairs,
              "tol_scale": tol_scale}
    sys.exit(_emit("transition-check", config, checks, fmt, out_path, started))


@main.command("polar")
@_common
def cmd_polar(L, sign, seed, fmt, out_path, tol_scale):
    """Polar-decomposition structure checks for the gauged symmetry operator."""
    if L < 2:
        raise click.UsageError("L must be >= 2")
    started = time.monotonic()
    s = 1 if sign == "+" else -1
    checks = polar_checks(L, s, seed, tol_scale)
    config = {"L": L, "sign": sign, "seed": seed, "tol_scale": tol_scale}
    sys.exit(_emit("polar", config, checks, fmt, out_path, started))


@main.command("spectrum")
@click.option("--model", type=click.Choice(sorted(_MODELS)), required=True)
@click.option("--matrix-out", type=click.Path(), default=None,
              help="Also dump the dense Hamiltonian matrix.")
@click.option("--matrix-format", type=click.Choice(["bin", "csv"]),
              default="bin", show_default=True)
@_common
def cmd_spectrum(model, matrix_out, matrix_format, L, sign, seed, fmt,
                 out_path, tol_scale):
    """Sorted eigenvalues of a model Hamiltonian."""
    if L < 2:
        raise click.UsageError("L must be >= 2")
    started = time.monotonic()
    spec = ModelSpec(_MODELS[model], L)
    try:
        op = materialize(build_hamiltonian(spec))
    except DimensionCapError as exc:
        raise click.UsageError(str(exc))
    result = hermitian_eigensolve(op)
    if matrix_out:
        if matrix_format == "bin":
            write_dense_binary(matrix_out, op.matrix)
        else:
            write_dense_csv(matrix_out, op.matrix)
    checks = [_check("eigensolver residual", result.residual,
                     1e-9 * op.dim * tol_scale)]
    config = {"model": model, "L": L, "tol_scale": tol_scale}
    extra = {"eigenvalues": [float(v) for v in result.eigenvalues]}
    if fmt == "csv":
        text = "\n".join(f"{i},{float(v)!r}" for i, v in enumerate(result.eigenvalues)) + "\n"
        if out_path:
            with open(out_path, "w") as fh:
                fh.write(text)
        else:
            click.echo(text, nl=False)
        sys.exit(0 if checks[0]["status"] == "pass" else 1)
    sys.exit(_emit("spectrum", config, checks, fmt, out_path, started, extra))


@main.command("gauge-equivalence")
@_common
def cmd_gauge_equivalence(L, sign, seed, fmt, out_path, tol_scale):
    """Fully gauged vs minimally gauged spectral comparison."""
    if L < 2:
        raise click.UsageError("L must be >= 2")
    started = time.monotonic()
    checks = gauge_checks(L, tol_scale)
    config = {"L": L, "tol_scale": tol_scale}
    sys.exit(_emit("gauge-equivalence", config, checks, fmt, out_path, started))


@main.command("full-suite")
@click.option("--inject-fault",
              type=click.Choice(["flip-boundary-sign", "nontrivial-projector"]),
              default=None)
@click.option("--pairs", type=int, default=100, show_default=True)
@_common
def cmd_full_suite(inject_fault, pairs, L, sign, seed, fmt, out_path, tol_scale):
    """Every check in one run: automorphisms, commutators, counterexample,
    preservation, polar structure, corollary, spectral equivalence."""
    if L < 2:
        raise click.UsageError("L must be >= 2")
    started = time.monotonic()
    checks = []
    for circuit in ("u1", "u2", "u-gauged"):
        sub = automorphism_checks(circuit, L)
        checks.append(_bool_check(f"automorphism table {circuit} (L={L})",
                                  all(c["status"] == "pass" for c in sub)))
    checks += commutator_checks(L, tol_scale,
                                flip_boundary=inject_fault == "flip-boundary-sign")
    checks += transition_checks(
        L, +1, seed, pairs, tol_scale,
        nontrivial_projector=inject_fault == "nontrivial-projector")
    checks += polar_checks(L, +1, seed, tol_scale)
    checks += gauge_checks(L, tol_scale)
    config = {"L": L, "seed": seed, "pairs": pairs, "tol_scale": tol_scale,
              "inject_fault": inject_fault}
    sys.exit(_emit("full-suite", config, checks, fmt, out_path, started))


if __name__ == "__main__":
    main()
