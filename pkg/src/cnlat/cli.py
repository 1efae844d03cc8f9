"""Command line interface.  Every command prints JSON; exit status is 0 for
true/pass, 1 for false/fail and 2 for bad input or usage."""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys

from .core import bits, element_names, parse_mask
from .lattice import (Diagnostic, LatticeError, LatticeInputError, SetLattice, is_cn_lattice,
                      is_geometric_lattice, order_complex, parse_lattice)
from .matroid import MatroidAxiomError
from .nbb import independence_family_atoms, induce_geometric, new_elements

EXIT_TRUE, EXIT_FALSE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read_json(source: str):
    if source == "-":
        return json.load(sys.stdin)
    try:
        with open(source) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {source}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{source} is not valid JSON: {e}") from None


def load_lattice(source: str) -> SetLattice:
    """A lattice file, '-' for stdin, or a fixture name such as FIX-A."""
    if source.upper().startswith("FIX-"):
        from .fixtures import get_fixture
        try:
            return get_fixture(source)
        except KeyError as e:
            raise InputError(str(e)) from None
    return parse_lattice(_read_json(source))


def load_family(source: str):
    """BasisFamily or IndependenceFamily file; returns the independents."""
    from .symplectic import parse_basis_family, parse_independence_family
    data = _read_json(source)
    if "bases" in data:
        return parse_basis_family(data).independents()
    if "independents" in data:
        return parse_independence_family(data)
    raise InputError("expected a 'bases' or 'independents' key")


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, default=str))


def _verdict(d: Diagnostic, fmt=None, **extra) -> int:
    out = d.to_json(fmt)
    out.update(extra)
    _emit(out)
    return EXIT_TRUE if d else EXIT_FALSE


# -- commands ---------------------------------------------------------------

def cmd_check(args) -> int:
    from .shell import find_shelling, is_recursive_atom_ordering, is_shelling
    from .symplectic import chow_check, is_symplectic, parse_basis_family
    kind = args.kind
    if kind in ("symplectic", "chow"):
        data = _read_json(args.source)
        if kind == "symplectic":
            if "bases" not in data:
                raise InputError("symplectic check needs a BasisFamily file")
            B = parse_basis_family(data)
            names = element_names(B.n)
            return _verdict(is_symplectic(B), lambda m: [names[b] for b in bits(m)])
        fam = load_family(args.source)
        return _verdict(chow_check(fam), fam.fmt)
    L = load_lattice(args.source)
    if kind == "cn":
        return _verdict(is_cn_lattice(L), L.fmt)
    if kind == "geometric":
        return _verdict(is_geometric_lattice(L), L.fmt)
    if kind == "atom-order":
        if not args.order:
            raise InputError("check atom-order needs --order <file>")
        order = _read_order(L, _read_json(args.order))
        return _verdict(is_recursive_atom_ordering(L, order), L.fmt)
    if kind == "shelling":
        K = order_complex(L, proper=args.proper)
        if args.order:
            perm = _read_json(args.order)
            if sorted(perm) != list(range(len(K.facets))):
                raise InputError("shelling order must be a permutation of facet indices")
        else:
            perm = find_shelling(K)
            if perm is None:
                return _verdict(Diagnostic(False, "shelling", (), "no shelling order exists"))
        d = is_shelling(K, perm)
        chains = [[L.fmt(x) for x in sorted(K.facets[i], key=lambda m: bin(m).count("1"))] for i in perm]
        return _verdict(d, L.fmt, order=perm, chains=chains)
    raise InputError(f"unknown check {kind!r}")


def _read_order(L: SetLattice, items) -> tuple[int, ...]:
    if L.n is not None:
        order = [parse_mask(x, L.n) for x in items]
    else:
        pos = {lab: i for i, lab in enumerate(L.labels)}
        order = [sum(1 << pos[str(x)] for x in item) for item in items]
    if sorted(order) != sorted(L.atoms):
        raise InputError("ordering must list every atom exactly once")
    return tuple(order)


def cmd_independents(args) -> int:
    L = load_lattice(args.source)
    if args.level == "atoms":
        fam = independence_family_atoms(L, method=args.method)
    else:
        from .symplectic import ground_independents
        fam = ground_independents(L, method=args.method, reading=args.reading)
        if args.admissible:
            from .symplectic import admissible_part
            fam = admissible_part(fam)
    _emit(fam.to_json())
    return EXIT_TRUE


def cmd_induce(args) -> int:
    L = load_lattice(args.source)
    P = induce_geometric(L)
    added = new_elements(L, P)
    _emit({"lattice": P.to_json(),
           "new_elements": [{"name": P.fmt(x), "members": P.members(x),
                             "covers": [P.fmt(y) for y in P.lower_covers[x]]} for x in added],
           "geometric": bool(is_geometric_lattice(P))})
    return EXIT_TRUE


def cmd_to_symplectic(args) -> int:
    from .symplectic import lattice_to_symplectic
    B = lattice_to_symplectic(load_lattice(args.source))
    _emit(B.to_json())
    return EXIT_TRUE


def cmd_from_symplectic(args) -> int:
    from .symplectic import symplectic_to_lattice
    L = symplectic_to_lattice(load_family(args.source), args.rank)
    _emit(L.to_json())
    return EXIT_TRUE


def cmd_rank_fn(args) -> int:
    from .symplectic import is_ranked_symplectic, symplectic_rank
    fam = load_family(args.source)
    amended = not args.literal
    rank = symplectic_rank(fam, args.rank, amended=amended)
    d = is_ranked_symplectic(fam, args.rank, amended=amended)
    table = {json.dumps([fam.labels[b] for b in bits(m)]): r for m, r in enumerate(rank)}
    return _verdict(d, fam.fmt, rank=table)


def cmd_spike(args) -> int:
    from .biasedgraph import SpikeGraph, parse_spike, spike_to_symplectic, theta_check
    if args.source:
        G = parse_spike(_read_json(args.source))
    else:
        if args.n is None:
            raise InputError("spike needs --n or a spike file")
        balanced = json.loads(args.balanced) if args.balanced else []
        G = SpikeGraph(args.n, tuple(parse_mask(t, args.n) for t in balanced))
    theta = theta_check(G)
    if not theta:
        return _verdict(theta, lambda m: [element_names(G.n)[b] for b in bits(m)])
    lattice, bases = spike_to_symplectic(G)
    _emit({"theta": True, "lattice": lattice.to_json(), "bases": bases.to_json()["bases"]})
    return EXIT_TRUE


def cmd_atom_order(args) -> int:
    from .shell import admissible_atom_ordering
    L = load_lattice(args.source)
    _emit([L.members(a) for a in admissible_atom_ordering(L)])
    return EXIT_TRUE


def cmd_enumerate(args) -> int:
    from .workbench import enumerate_cn, enumerate_symplectic
    if args.kind == "cn":
        res = enumerate_cn(args.n, args.budget)
        _emit({"n": args.n, "count": len(res), "truncated": res.truncated,
               "lattices": [L.to_json() for L in res]})
    else:
        if args.k is None:
            raise InputError("enumerate symplectic needs --k")
        fams = enumerate_symplectic(args.n, args.k)
        _emit({"n": args.n, "k": args.k, "count": len(fams), "families": [B.to_json() for B in fams]})
    return EXIT_TRUE


def cmd_suite(args) -> int:
    from .workbench import run_property_suite
    report = run_property_suite(args.corpus, threads=args.threads)
    report["seed"] = args.seed
    _emit(report)
    return EXIT_TRUE if report["passed"] else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cnlat", description=__doc__)
    p.add_argument("--seed", type=int, default=0, help="seed for any randomized choice")
    p.add_argument("--threads", type=int, default=1, help="cap on worker processes")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check a structure against its axioms")
    c.add_argument("kind", choices=["cn", "geometric", "symplectic", "chow", "atom-order", "shelling"])
    c.add_argument("source", help="JSON file, '-' for stdin, or a fixture name (FIX-A..FIX-E)")
    c.add_argument("--order", help="ordering file (atom-order: JSON atom sets; shelling: facet indices)")
    c.add_argument("--proper", action="store_true", help="shell the proper part (drop bottom and top)")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("independents", help="NBB independent sets")
    c.add_argument("source")
    c.add_argument("--level", choices=["atoms", "ground"], default="atoms")
    c.add_argument("--method", choices=["fast", "oracle"], default="fast")
    c.add_argument("--reading", choices=["distinct", "literal"], default="distinct")
    c.add_argument("--admissible", action="store_true", help="keep admissible sets only")
    c.set_defaults(func=cmd_independents)

    c = sub.add_parser("induce-geometric", help="geometric lattice of the atom matroid")
    c.add_argument("source")
    c.set_defaults(func=cmd_induce)

    c = sub.add_parser("to-symplectic", help="bases of the symplectic matroid of a C_n lattice")
    c.add_argument("source")
    c.set_defaults(func=cmd_to_symplectic)

    c = sub.add_parser("from-symplectic", help="C_n lattice of a ranked symplectic matroid")
    c.add_argument("source")
    c.add_argument("--rank", type=int, default=None, help="lattice rank d (default: largest independent)")
    c.set_defaults(func=cmd_from_symplectic)

    c = sub.add_parser("rank-fn", help="extended rank function of a symplectic family")
    c.add_argument("source")
    c.add_argument("--rank", type=int, default=None)
    c.add_argument("--literal", action="store_true", help="bonus without the a* in A condition")
    c.set_defaults(func=cmd_rank_fn)

    c = sub.add_parser("spike", help="lift matroid of a doubled-cycle spike")
    c.add_argument("source", nargs="?", help="spike file (alternative to --n/--balanced)")
    c.add_argument("--n", type=int)
    c.add_argument("--balanced", help='JSON list of transversals, e.g. [["1","2*"],["1*","2"]]')
    c.set_defaults(func=cmd_spike)

    c = sub.add_parser("atom-order", help="admissible atom ordering of a C_n lattice")
    c.add_argument("source")
    c.set_defaults(func=cmd_atom_order)

    c = sub.add_parser("enumerate", help="exhaustive enumeration up to symmetry")
    c.add_argument("kind", choices=["cn", "symplectic"])
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int)
    c.add_argument("--budget", type=float, default=None, help="seconds before truncation")
    c.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("suite", help="run every invariant over a corpus")
    c.add_argument("--corpus", default="fixtures",
                   help="fixtures, broken, cn1, cn2, cn3, families1 or families2")
    c.set_defaults(func=cmd_suite)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_TRUE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    random.seed(args.seed)
    try:
        return args.func(args)
    except (InputError, LatticeInputError, LatticeError, MatroidAxiomError, ValueError, KeyError) as e:
        _emit({"error": type(e).__name__, "message": str(e)})
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
