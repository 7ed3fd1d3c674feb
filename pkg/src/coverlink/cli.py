"""Command-line front end: `coverlink <group|qm|clasp|forms> <verb> ...`.

Every command emits a report (human text by default, a single JSON
document with --json) and exits 0 on pass, 1 on a failed check, 2 when a
bounded enumeration or search was inconclusive, and 3 on input errors.
In JSON reports every number is rendered as a decimal string so consumers
never face integer-width questions; the timing field is the only
nondeterministic part.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import clasp as clasp_mod
from . import forms as forms_mod
from .errors import (
    CoverlinkError,
    Inconclusive,
    InputError,
    ParseError,
    SignatureObstructed,
)
from .groupring import FiniteGroup
from .presentations import (
    DEFAULT_MAX_COSETS,
    GroupPresentation,
    Word,
    abelianization,
    check_homomorphism,
    enumerate_cosets,
    parse_presentation,
    reidemeister_schreier,
    subgroup_generates,
    word_is_trivial,
)
from .qm import (
    QmInstance,
    elimination_images,
    eta_words,
    expected_order,
    inclusion_images,
    qm_presentation,
    qm_reduced_presentation,
    qm_surgery_presentation,
)

ENV_MAX_COSETS = "COVERLINK_MAX_COSETS"


@dataclass
class Report:
    command: str
    status: str  # pass | fail | inconclusive
    payload: dict
    timing: float

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "inconclusive": 2}[self.status]


def _stringify(value):
    """Render every number as a decimal string, recursively."""
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, (list, tuple)):
        return [_stringify(v) for v in value]
    if isinstance(value, dict):
        return {k: _stringify(v) for k, v in value.items()}
    return value


def _emit(report: Report, as_json: bool) -> int:
    if as_json:
        doc = {"command": report.command, "status": report.status,
               "payload": _stringify(report.payload),
               "timing": f"{report.timing:.6f}"}
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(f"command: {report.command}")
        for key, val in report.payload.items():
            print(f"{key}: {_plain(val)}")
        print(f"status: {report.status}  ({report.timing:.3f}s)")
    return report.exit_code


def _plain(val) -> str:
    if isinstance(val, (list, tuple, dict)):
        return json.dumps(_stringify(val))
    return str(val)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # input errors must exit 3, not argparse's 2
        raise ParseError(message)


def _abelian_payload(inv) -> dict:
    return {"invariant_factors": list(inv.invariant_factors),
            "free_rank": inv.free_rank,
            "group": str(inv)}


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _read_json(path: str) -> dict:
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from None


def _load_presentation(path: str) -> GroupPresentation:
    return parse_presentation(_read_text(path))


_CYCLIC_RE = re.compile(r"[cz](\d+)$", re.IGNORECASE)
_QM_RE = re.compile(r"qm_p(-?\d+)$")


def resolve_group(name: str, basedir: Path | None = None
                  ) -> tuple[GroupPresentation, FiniteGroup]:
    """Resolve a group name from a clasp/groupring JSON document.

    Builtins: "trivial", "cN"/"zN" (cyclic of order N), "qm_pK" (the
    circle-bundle group with parameter p = K).  Anything else is read as a
    presentation file, relative to the referencing document's directory
    first and the working directory second.
    """
    if name == "trivial":
        pres = GroupPresentation((), ())
        return pres, FiniteGroup.from_presentation(pres)
    m = _CYCLIC_RE.match(name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ParseError(f"bad cyclic group order in {name!r}")
        pres = GroupPresentation(("a",), (Word([("a", n)]),))
        return pres, FiniteGroup.from_presentation(pres)
    m = _QM_RE.match(name)
    if m:
        pres = qm_presentation(QmInstance(int(m.group(1))))
        return pres, FiniteGroup.from_presentation(pres)
    candidates = []
    if basedir is not None:
        candidates.append(basedir / name)
    candidates.append(Path(name))
    for cand in candidates:
        if cand.is_file():
            pres = parse_presentation(cand.read_text(encoding="utf-8"))
            return pres, FiniteGroup.from_presentation(pres)
    raise InputError(f"unknown group {name!r}: not a builtin and not a file")


# ---------------------------------------------------------------------------
# group subcommand


def _cmd_group(args) -> Report:
    pres = _load_presentation(args.presentation)
    start = time.perf_counter()
    verb = args.verb
    if verb == "order":
        table = enumerate_cosets(pres, (), args.max_cosets, args.strategy)
        return Report("group order", "pass", {"order": table.cosets},
                      time.perf_counter() - start)
    if verb == "abelianization":
        inv = abelianization(pres)
        return Report("group abelianization", "pass", _abelian_payload(inv),
                      time.perf_counter() - start)
    if verb == "word-trivial":
        word = Word.parse(args.word)
        pres.check_word(word)
        table = enumerate_cosets(pres, (), args.max_cosets, args.strategy)
        ok = word_is_trivial(table, word)
        return Report("group word-trivial", "pass" if ok else "fail",
                      {"word": args.word, "trivial": ok},
                      time.perf_counter() - start)
    words = [Word.parse(w) for w in args.words]
    for w in words:
        pres.check_word(w)
    table = enumerate_cosets(pres, words, args.max_cosets, args.strategy)
    if verb == "subgroup":
        return Report("group subgroup", "pass",
                      {"index": table.cosets,
                       "generates": subgroup_generates(table)},
                      time.perf_counter() - start)
    # kernel-homology
    sub = reidemeister_schreier(pres, table)
    inv = abelianization(sub)
    payload = {"index": table.cosets, "subgroup_generators": len(sub.generators)}
    payload.update(_abelian_payload(inv))
    return Report("group kernel-homology", "pass", payload,
                  time.perf_counter() - start)


# ---------------------------------------------------------------------------
# qm subcommand


def _parse_p_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        try:
            lo_i, hi_i = int(lo), int(hi)
        except ValueError:
            raise ParseError(f"bad p range {text!r}") from None
        if hi_i < lo_i:
            raise ParseError(f"empty p range {text!r}")
        return list(range(lo_i, hi_i + 1))
    try:
        return [int(text)]
    except ValueError:
        raise ParseError(f"bad p value {text!r}") from None


def _certify_qm(p: int, max_cosets: int) -> dict:
    """Run the full certification chain for one parameter value."""
    inst = QmInstance(p)
    normal = qm_presentation(inst)
    reduced = qm_reduced_presentation(inst)
    surgery = qm_surgery_presentation(inst)
    table = enumerate_cosets(normal, (), max_cosets)
    surgery_table = enumerate_cosets(surgery, (), max_cosets)
    reduced_table = enumerate_cosets(reduced, (), max_cosets)

    order_ok = table.cosets == expected_order(inst)
    ab_ok = all(
        abelianization(pres).invariant_factors == (4,)
        and abelianization(pres).free_rank == 0
        for pres in (normal, reduced, surgery))
    chain_ok = (
        check_homomorphism(surgery, table, elimination_images())
        and check_homomorphism(normal, surgery_table, inclusion_images())
        and surgery_table.cosets == table.cosets
        and reduced_table.cosets == table.cosets)
    eta0, eta1 = eta_words(inst)
    eta_ok = (word_is_trivial(table, eta1.inverse() * eta0)
              and subgroup_generates(
                  enumerate_cosets(normal, [eta0, Word([("z", 1)])], max_cosets)))
    sub_table = enumerate_cosets(normal, [Word([("y", 2)])], max_cosets)
    kernel = abelianization(reidemeister_schreier(normal, sub_table))
    m = abs(inst.m)
    kernel_ok = (sub_table.cosets == 4
                 and kernel.free_rank == 0
                 and kernel.invariant_factors == ((m,) if m > 1 else ()))
    return {
        "p": p,
        "m": inst.m,
        "order": table.cosets,
        "order_ok": order_ok,
        "abelianization_ok": ab_ok,
        "presentation_chain_ok": chain_ok,
        "eta_ok": eta_ok,
        "kernel_index": sub_table.cosets,
        "kernel_homology": str(kernel),
        "kernel_ok": kernel_ok,
        "all_ok": order_ok and ab_ok and chain_ok and eta_ok and kernel_ok,
    }


def _cmd_qm(args) -> Report:
    ps = _parse_p_range(args.p)
    start = time.perf_counter()
    results = [_certify_qm(p, args.max_cosets) for p in ps]
    ok = all(r["all_ok"] for r in results)
    return Report("qm", "pass" if ok else "fail",
                  {"p_values": ps, "results": results},
                  time.perf_counter() - start)


# ---------------------------------------------------------------------------
# clasp subcommand


def _load_clasp_document(path: str):
    doc = _read_json(path)
    basedir = Path(path).resolve().parent
    if "ops" in doc:
        prog, group_name = clasp_mod.program_from_json(doc)
        pres, group = resolve_group(group_name, basedir)
        return clasp_mod.eval_program(prog, group), group, group_name
    if "lambda" in doc:
        group_name = doc.get("group")
        if not isinstance(group_name, str):
            raise ParseError(f"{path}: missing group name")
        pres, group = resolve_group(group_name, basedir)
        return clasp_mod.matrix_from_json(doc, group), group, group_name
    raise ParseError(f"{path}: expected a clasp program (ops) "
                     "or a linking matrix (lambda)")


def _maybe_write(args, doc: dict) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n",
                                  encoding="utf-8")


def _cmd_clasp(args) -> Report:
    start = time.perf_counter()
    T, group, group_name = _load_clasp_document(args.file)
    verb = args.verb
    if verb == "eval":
        doc = clasp_mod.matrix_to_json(T, group_name)
        _maybe_write(args, doc)
        return Report("clasp eval", "pass",
                      {"matrix": doc,
                       "upstairs_framings": [clasp_mod.upstairs_framing(T, i)
                                             for i in range(T.n)]},
                      time.perf_counter() - start)
    if verb == "homology":
        inv = clasp_mod.cover_surgery_homology(T)
        payload = {"cover_size": T.n * group.order}
        payload.update(_abelian_payload(inv))
        return Report("clasp homology", "pass", payload,
                      time.perf_counter() - start)
    if verb == "trivialize":
        ext = clasp_mod.trivialize_first_row(T)
        after = clasp_mod.apply_instructions(T, ext.instructions)
        doc = clasp_mod.program_to_json(ext, group_name)
        _maybe_write(args, doc)
        first_row = [el.to_pairs() for el in after.lam[0]]
        return Report("clasp trivialize", "pass",
                      {"program": doc, "first_row_after": first_row,
                       "upstairs_framing": clasp_mod.upstairs_framing(after, 0)},
                      time.perf_counter() - start)
    # realize
    prog = clasp_mod.realize(group, T.lam, T.framings, T.mu)
    doc = clasp_mod.program_to_json(prog, group_name)
    _maybe_write(args, doc)
    return Report("clasp realize", "pass",
                  {"program": doc, "instructions": len(prog.instructions)},
                  time.perf_counter() - start)


# ---------------------------------------------------------------------------
# forms subcommand


def _load_form(args) -> forms_mod.IntegerSymmetricForm:
    if args.builtin:
        key = args.builtin.upper()
        if key not in forms_mod.BUILTIN_FORMS:
            raise InputError(f"unknown builtin form {args.builtin!r}; "
                             f"available: {sorted(forms_mod.BUILTIN_FORMS)}")
        return forms_mod.BUILTIN_FORMS[key]()
    if not args.file:
        raise ParseError("need a matrix file or --builtin")
    doc = _read_json(args.file)
    if not isinstance(doc, list):
        raise ParseError(f"{args.file}: expected a JSON array of arrays")
    try:
        rows = tuple(tuple(int(v) for v in row) for row in doc)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{args.file}: bad matrix: {exc}") from None
    return forms_mod.IntegerSymmetricForm(rows)


def _cmd_forms(args) -> Report:
    F = _load_form(args)
    start = time.perf_counter()
    verb = args.verb
    if verb == "even":
        ok = forms_mod.is_even(F)
        return Report("forms even", "pass" if ok else "fail", {"even": ok},
                      time.perf_counter() - start)
    if verb == "unimodular":
        ok = forms_mod.is_unimodular(F)
        return Report("forms unimodular", "pass" if ok else "fail",
                      {"unimodular": ok}, time.perf_counter() - start)
    if verb == "signature":
        sig = forms_mod.signature(F)
        return Report("forms signature", "pass", {"signature": sig},
                      time.perf_counter() - start)
    if verb == "hyperbolize":
        decomp = forms_mod.hyperbolic_basis(F, search_bound=args.search_bound)
        return Report("forms hyperbolize", "pass",
                      {"blocks": decomp.blocks,
                       "basis_change": [list(r) for r in decomp.basis_change]},
                      time.perf_counter() - start)
    # stabilize
    blocks = forms_mod.e8_stabilization(F, args.category)
    return Report("forms stabilize", "pass",
                  {"category": args.category, "blocks": blocks,
                   "signature": forms_mod.signature(F)},
                  time.perf_counter() - start)


# ---------------------------------------------------------------------------
# wiring


def _default_max_cosets() -> int:
    env = os.environ.get(ENV_MAX_COSETS)
    if env is None:
        return DEFAULT_MAX_COSETS
    try:
        value = int(env)
    except ValueError:
        raise InputError(f"{ENV_MAX_COSETS} must be an integer, got {env!r}") \
            from None
    if value < 1:
        raise InputError(f"{ENV_MAX_COSETS} must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coverlink",
                     description="batch verifier for presentation, covering "
                                 "homology, clasp and form calculations")
    sub = parser.add_subparsers(dest="module", required=True)

    def add_common(p, cosets=False):
        p.add_argument("--json", action="store_true",
                       help="emit a single JSON report on stdout")
        if cosets:
            p.add_argument("--max-cosets", type=int, default=None,
                           help=f"coset limit (default {DEFAULT_MAX_COSETS}, "
                                f"env {ENV_MAX_COSETS})")
            p.add_argument("--strategy", choices=("hlt", "hlt-lookahead"),
                           default="hlt-lookahead",
                           help="enumeration strategy (default hlt-lookahead)")

    g = sub.add_parser("group", help="finitely presented group calculations")
    gsub = g.add_subparsers(dest="verb", required=True)
    for verb, hlp in (("order", "group order by coset enumeration"),
                      ("abelianization", "invariant factors and free rank"),
                      ("word-trivial", "word problem in the finite quotient"),
                      ("subgroup", "index and generation check"),
                      ("kernel-homology", "abelianized subgroup presentation")):
        gp = gsub.add_parser(verb, help=hlp)
        gp.add_argument("presentation", help="presentation file")
        if verb == "word-trivial":
            gp.add_argument("word", help="word in token syntax, quoted")
        elif verb in ("subgroup", "kernel-homology"):
            gp.add_argument("words", nargs="+",
                            help="subgroup generator words, quoted")
        add_common(gp, cosets=True)

    q = sub.add_parser("qm", help="certification sweep over the family")
    q.add_argument("--p", required=True,
                   help="parameter value or inclusive range, e.g. 1 or 0..5")
    add_common(q, cosets=True)

    c = sub.add_parser("clasp", help="twisted linking calculus")
    csub = c.add_subparsers(dest="verb", required=True)
    for verb, hlp in (("eval", "evaluate a clasp program"),
                      ("homology", "cover homology of the surgered manifold"),
                      ("trivialize", "clear the first row by clasp moves"),
                      ("realize", "clasp program realizing a Hermitian matrix")):
        cp = csub.add_parser(verb, help=hlp)
        cp.add_argument("file", help="program or matrix JSON file")
        if verb in ("eval", "trivialize", "realize"):
            cp.add_argument("--out", help="write the result JSON to a file")
        add_common(cp)

    f = sub.add_parser("forms", help="integral symmetric forms")
    fsub = f.add_subparsers(dest="verb", required=True)
    for verb, hlp in (("even", "all diagonal entries even?"),
                      ("unimodular", "determinant +-1?"),
                      ("signature", "exact signature"),
                      ("hyperbolize", "decompose into hyperbolic planes"),
                      ("stabilize", "definite even blocks to kill the signature")):
        fp = fsub.add_parser(verb, help=hlp)
        fp.add_argument("file", nargs="?", help="matrix JSON file")
        fp.add_argument("--builtin", help="named constant: H or E8")
        if verb == "stabilize":
            fp.add_argument("--category", choices=("topological", "smooth"),
                            required=True)
        if verb == "hyperbolize":
            fp.add_argument("--search-bound", type=int,
                            default=forms_mod.DEFAULT_SEARCH_BOUND,
                            help="isotropic search bound (default "
                                 f"{forms_mod.DEFAULT_SEARCH_BOUND})")
        add_common(fp)

    return parser


_DISPATCH = {"group": _cmd_group, "qm": _cmd_qm,
             "clasp": _cmd_clasp, "forms": _cmd_forms}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "max_cosets", None) is None and hasattr(args, "max_cosets"):
            args.max_cosets = _default_max_cosets()
        report = _DISPATCH[args.module](args)
        return _emit(report, args.json)
    except Inconclusive as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 3
    except SignatureObstructed as exc:
        print(f"failed check: {exc}", file=sys.stderr)
        return 1
    except CoverlinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
