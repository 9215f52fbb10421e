"""Command-line front end (``fermnlts``).

Exit status: 0 success, 2 parse error, 3 dimension/kind/index and other
input errors, 4 dense cap exceeded, 5 verification failure.  Errors print a
single ``error: <category>: <message>`` line on stderr.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Sequence

import numpy as np

from . import io as fio
from .errors import FermNLTSError, KindError, VerificationFailure, exit_code_for
from .exemplars import repetition_hamiltonian, steane_hamiltonian
from .graphs import (
    degree_increase,
    embedding_is_induced,
    horton_mcb,
    localize,
    random_connected_graph,
    verify_cycle_basis,
)
from .mappings import MAPPINGS, map_opsum
from .nlts import DepthBoundInput, construct_nlts, depth_lower_bound
from .operators import opsum_locality, opsum_sparsity
from .superfast import interaction_graph, superfast_encode
from .verify import (
    dense,
    eigen_spectrum,
    gaussian_povm_distribution,
    ground_state_density,
    pauli_povm_distribution,
    prepare_state,
    spectrum_match_with_degeneracy,
    spreadness,
    spreadness_exhaustive,
)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _cap(args) -> int | None:
    return args.cap


# --------------------------------------------------------------------------
# Subcommands


def cmd_map(args) -> int:
    h = fio.parse_hamiltonian(_read(args.input))
    _write(args.output, fio.serialize_hamiltonian(map_opsum(args.mapping, h)))
    return 0


def cmd_construct(args) -> int:
    hq = fio.parse_hamiltonian(_read(args.input))
    hf = construct_nlts(hq)
    _write(args.output, fio.serialize_hamiltonian(hf))
    report = fio.serialize_report(
        [
            ("n_qubits", hq.size),
            ("n_majoranas", hf.size),
            ("n_terms", len(hf)),
            ("locality_in", opsum_locality(hq)),
            ("locality_out", opsum_locality(hf)),
            ("sparsity_in", opsum_sparsity(hq)),
            ("sparsity_out", opsum_sparsity(hf)),
        ]
    )
    if args.output is None or args.output == "-":
        sys.stderr.write(report)
    else:
        _write(args.report, report)
    return 0


def cmd_graph(args) -> int:
    action = args.action
    if action == "extract":
        h = fio.parse_hamiltonian(_read(args.input))
        _write(args.output, fio.serialize_graph(interaction_graph(h)))
        return 0
    if action == "random":
        rng = random.Random(args.seed)
        g = random_connected_graph(args.n, rng, max_degree=args.max_degree, mean_degree=args.mean_degree)
        _write(args.output, fio.serialize_graph(g))
        return 0
    g = fio.parse_graph(_read(args.input))
    if action == "mcb":
        _write(args.output, fio.serialize_cycle_basis(horton_mcb(g)))
        return 0
    if args.basis is None:
        raise FermNLTSError("--basis is required for this action")
    b = fio.parse_cycle_basis(_read(args.basis), g)
    if action == "localize":
        res = localize(g, b)
        _write(args.output, fio.serialize_graph(res.graph))
        if args.basis_out:
            _write(args.basis_out, fio.serialize_cycle_basis(res.basis))
        return 0
    # verify
    rep = verify_cycle_basis(g, b)
    lines = rep.lines()
    ok = rep.independent and rep.dim_ok and rep.all_simple
    if args.original:
        g0 = fio.parse_graph(_read(args.original))
        n = g0.n_vertices
        if g.n_vertices % n:
            raise VerificationFailure("localized graph size is not a multiple of the original")
        emb = {v: v for v in g0.vertices}
        origin = {w: ((w - 1) % n + 1, (w - 1) // n + 1) for w in g.vertices}
        induced = embedding_is_induced(g0, g, emb)
        lines += [
            f"embedding_induced {'true' if induced else 'false'}",
            f"degree_increase {degree_increase(g0, g, origin)}",
            f"vertex_ratio {g.n_vertices // n}",
        ]
    _write(args.output, "\n".join(lines) + "\n")
    if not ok:
        raise VerificationFailure("cycle basis is not a valid basis")
    return 0


def cmd_encode(args) -> int:
    h = fio.parse_hamiltonian(_read(args.input))
    if h.kind != "majorana":
        raise KindError("encode-superfast needs a majorana Hamiltonian")
    g = fio.parse_graph(_read(args.graph)) if args.graph else interaction_graph(h)
    b = fio.parse_cycle_basis(_read(args.basis), g) if args.basis else horton_mcb(g)
    enc = superfast_encode(g, b)
    _write(args.output, fio.serialize_hamiltonian(enc.encode(h)))
    text = fio.serialize_term_list("pauli", enc.n_qubits, enc.stabilizer_terms)
    if args.stabilizers:
        _write(args.stabilizers, text)
    elif args.output not in (None, "-"):
        sys.stdout.write(text)
    return 0


def cmd_verify_spectrum(args) -> int:
    hq = fio.parse_hamiltonian(_read(args.qubit))
    hf = fio.parse_hamiltonian(_read(args.fermion))
    n = args.n if args.n is not None else hq.size
    sq = eigen_spectrum(dense(hq, _cap(args)))
    sf = eigen_spectrum(dense(hf, _cap(args)))
    match = spectrum_match_with_degeneracy(sq, sf, n, args.tol)
    rounded = lambda s: [float(np.round(x, 12)) + 0.0 for x in s]  # noqa: E731
    _write(
        args.output,
        fio.serialize_report(
            [
                ("spectrum_q", rounded(sq)),
                ("spectrum_f", rounded(sf)),
                ("degeneracy", 1 << (n // 2)),
                ("match", match),
            ]
        ),
    )
    if not match:
        raise VerificationFailure("spectra do not match with the expected degeneracy")
    return 0


def cmd_spreadness(args) -> int:
    spectrum = None
    if args.distribution:
        p = fio.parse_distribution(_read(args.distribution))
    else:
        if args.hamiltonian:
            h = fio.parse_hamiltonian(_read(args.hamiltonian))
            a = dense(h, _cap(args))
            rho = ground_state_density(a)
            spectrum = [float(np.round(x, 12)) + 0.0 for x in eigen_spectrum(a)]
        elif args.circuit:
            rho = prepare_state(fio.parse_circuit(_read(args.circuit)), cap=_cap(args))
        else:
            raise FermNLTSError("give one of --distribution, --hamiltonian or --circuit")
        if args.angles:
            thetas, phis = fio.parse_angles(_read(args.angles))
            p = pauli_povm_distribution(rho, thetas, phis)
        elif args.gaussian:
            p = gaussian_povm_distribution(rho, fio.parse_circuit(_read(args.gaussian)), _cap(args))
        else:
            p = gaussian_povm_distribution(rho)
        if args.dist_out:
            _write(args.dist_out, fio.serialize_distribution(p))
    if not args.full_spectrum:
        spectrum = None
    if args.exhaustive:
        rep = spreadness_exhaustive(p, args.L, eps=args.eps)
    else:
        rep = spreadness(p, args.L, eps=args.eps)
    _write(args.output, fio.serialize_spreadness(rep, spectrum))
    return 0


def cmd_depth_bound(args) -> int:
    b = depth_lower_bound(DepthBoundInput(args.l, args.m, args.L, args.mu))
    _write(
        args.output,
        fio.serialize_report(
            [("depth_bound", b.value), ("unclamped", b.unclamped), ("clamped", b.clamped), ("log", b.log)]
        ),
    )
    return 0


def cmd_exemplar(args) -> int:
    if args.name == "repetition":
        h = repetition_hamiltonian(args.n)
    else:
        h = steane_hamiltonian(pad=args.pad)
    _write(args.output, fio.serialize_hamiltonian(h))
    return 0


# --------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fermnlts", description="Fermionic NLTS toolkit: mappings, encodings and checks.")
    p.add_argument("--seed", type=int, default=0, help="seed for every randomized step")
    p.add_argument("--cap", type=int, default=None, help="dense-size cap in qubits (default: $FERMNLTS_DENSE_CAP or 14)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("map", help="apply a fermion/qubit mapping to a Hamiltonian file")
    s.add_argument("input")
    s.add_argument("--mapping", required=True, choices=MAPPINGS)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_map)

    s = sub.add_parser("construct-nlts", help="Pauli Hamiltonian -> assimilated Majorana Hamiltonian")
    s.add_argument("input")
    s.add_argument("-o", "--output")
    s.add_argument("--report", help="locality/sparsity report path (default stdout when -o is a file)")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("graph", help="interaction graphs, cycle bases and localization")
    s.add_argument("action", choices=["extract", "mcb", "localize", "verify", "random"])
    s.add_argument("input", nargs="?", help="Hamiltonian (extract) or graph file")
    s.add_argument("--basis", help="cycle basis file")
    s.add_argument("--basis-out", help="where localize writes the new basis")
    s.add_argument("--original", help="original graph, for embedding checks in verify")
    s.add_argument("--n", type=int, default=20, help="vertex count for random")
    s.add_argument("--max-degree", type=int, default=4)
    s.add_argument("--mean-degree", type=float, default=3.0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("encode-superfast", help="edge-qubit encoding of a Majorana Hamiltonian")
    s.add_argument("input")
    s.add_argument("--graph", help="graph file (default: interaction graph)")
    s.add_argument("--basis", help="cycle basis file (default: minimum cycle basis)")
    s.add_argument("-o", "--output")
    s.add_argument("--stabilizers", help="stabilizer output file")
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("verify-spectrum", help="compare qubit and fermionic spectra with degeneracy")
    s.add_argument("qubit")
    s.add_argument("fermion")
    s.add_argument("--n", type=int, default=None, help="qubit count (default: from the qubit file)")
    s.add_argument("--tol", type=float, default=1e-9)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_verify_spectrum)

    s = sub.add_parser("spreadness", help="(mu, L)-spreadness of a measured distribution")
    s.add_argument("--L", type=int, required=True)
    src = s.add_mutually_exclusive_group()
    src.add_argument("--distribution", help="'s p' distribution file")
    src.add_argument("--hamiltonian", help="use the (mixed) ground state of this Hamiltonian")
    src.add_argument("--circuit", help="use the state prepared by this circuit")
    meas = s.add_mutually_exclusive_group()
    meas.add_argument("--angles", help="'theta phi' lines: single-qubit rotated measurement")
    meas.add_argument("--gaussian", help="Gaussian circuit file: rotated mode-parity measurement")
    s.add_argument("--eps", type=float, default=1e-12, help="ignore outcomes with p <= eps")
    s.add_argument("--exhaustive", action="store_true", help="search all witness pairs (small supports only)")
    s.add_argument("--dist-out", help="also write the distribution")
    s.add_argument("--full-spectrum", action="store_true", help="include the Hamiltonian spectrum")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_spreadness)

    s = sub.add_parser("depth-bound", help="circuit depth lower bound from spreadness")
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--m", type=int, default=0)
    s.add_argument("--L", type=float, required=True)
    s.add_argument("--mu", type=float, required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_depth_bound)

    s = sub.add_parser("exemplar", help="write a shipped CSS-code Hamiltonian")
    s.add_argument("name", choices=["repetition", "steane"])
    s.add_argument("--n", type=int, default=4, help="repetition code length")
    s.add_argument("--pad", action="store_true", help="steane: add an idle qubit (8 qubits)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_exemplar)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except FermNLTSError as exc:
        sys.stderr.write(f"error: {exc.category}: {exc}\n")
        return exit_code_for(exc)
    except (ValueError, IndexError, TypeError) as exc:
        code = 3
        sys.stderr.write(f"error: input: {exc}\n")
        return code
    except OSError as exc:
        sys.stderr.write(f"error: io: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
