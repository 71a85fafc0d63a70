"""Command-line interface: one JSON-lines report per invocation, stable for
scripting; --quiet swaps the report for an exit code.

Exit codes with --quiet: 0 true/separable/coverable, 1 negative, 2 error,
3 unknown at the current approximation level.
"""

import json
import sys
import time

import click

from . import dfa as dfalib
from .classes import Base, canonical_morphism, parse_class
from .covering import (
    UnsupportedClassError,
    decide_covering,
    decide_separation,
    extract_mpol_separator,
    tower_base,
)
from .ef import ef_leq
from .equiv import canonical_equiv_finite
from .membership import Context, decide_membership, membership_report
from .monoid import green
from .rating import covering_input
from .syntactic import syntactic_morphism
from .wordstruct import MarkedProduct, class_as_product, classify_product, marked_positions

SCHEMA = 1


def _report(command, quiet, code_map, **fields):
    out = {"schema": SCHEMA, "command": command}
    out.update(fields)
    out["elapsed_ms"] = int((time.time() - _report.t0) * 1000)
    if not quiet:
        click.echo(json.dumps(out, sort_keys=True))
    sys.exit(code_map)


def _fail(command, quiet, message):
    if not quiet:
        click.echo(json.dumps({"schema": SCHEMA, "command": command, "error": message}), err=True)
    else:
        click.echo(message, err=True)
    sys.exit(2)


@click.group()
def main():
    """Decision procedures for deterministic polynomial closures."""
    _report.t0 = time.time()


def _compile(regex, alphabet):
    return dfalib.compile_regex(regex, alphabet if alphabet else None)


@main.command()
@click.option("--regex", required=True)
@click.option("--alphabet", default=None)
def syntactic(regex, alphabet):
    """Syntactic monoid dump: table, Green classes, omega, accepting set."""
    _report.t0 = time.time()
    rl = syntactic_morphism(_compile(regex, alphabet))
    m = rl.morphism.target
    g = green(m)
    lines = [f"monoid {m.n}"]
    lines += [" ".join(str(x) for x in row) for row in m.table]
    lines.append(f"unit {m.unit}")
    lines.append("names " + " ".join(m.names))
    lines.append(f"omega {m.omega}")
    lines.append("accept " + " ".join(str(x) for x in sorted(rl.accept)))
    for kind, classes in (("J", g.j_classes), ("R", g.r_classes), ("L", g.l_classes)):
        shown = " ; ".join(",".join(m.names[x] for x in c) for c in classes)
        lines.append(f"{kind}-classes {shown}")
    click.echo("\n".join(lines))


@main.command()
@click.option("--class", "class_expr", required=True)
@click.option("--regex", required=True)
@click.option("--alphabet", default=None)
@click.option("--witness", is_flag=True)
@click.option("--quiet", is_flag=True)
def member(class_expr, regex, alphabet, witness, quiet):
    """Class membership for the language of the regex."""
    _report.t0 = time.time()
    try:
        expr = parse_class(class_expr)
        lang = _compile(regex, alphabet)
        if witness:
            rep = membership_report(expr, lang)
            verdict = rep.holds
            extra = {"witness": rep.witness, "equation": rep.equation}
        else:
            verdict = decide_membership(expr, lang)
            extra = {}
    except Exception as e:  # noqa: BLE001 - surface as exit 2
        _fail("member", quiet, f"{type(e).__name__}: {e}")
    _report(
        "member",
        quiet,
        0 if verdict else 1,
        verdict=bool(verdict),
        certified="exact",
        class_expr=str(expr),
        regex=regex,
        **extra,
    )


@main.command()
@click.option("--class", "class_expr", required=True)
@click.option("--regex", required=True)
@click.option("--alphabet", default=None)
def equiv(class_expr, regex, alphabet):
    """Blocks of the canonical equivalence on the syntactic monoid."""
    _report.t0 = time.time()
    expr = parse_class(class_expr)
    rl = syntactic_morphism(_compile(regex, alphabet))
    ctx = Context()
    cong = ctx.canonical_equiv(expr, rl.morphism)
    names = rl.morphism.target.names
    for block in cong.blocks:
        click.echo("{" + ", ".join(names[x] for x in block) + "}")


@main.command()
@click.option("--class", "class_expr", required=True)
@click.option("--left", required=True)
@click.option("--right", required=True)
@click.option("--alphabet", default=None)
@click.option("--witness", is_flag=True)
@click.option("--ptk", default=3, show_default=True)
@click.option("--quiet", is_flag=True)
def separate(class_expr, left, right, alphabet, witness, ptk, quiet):
    """Separability of the left language from the right one."""
    _report.t0 = time.time()
    try:
        expr = parse_class(class_expr)
        alphabet = alphabet or "".join(
            sorted(set(left + right) & set("abcdefghijklmnopqrstuvwxyz"))
        )
        l1 = _compile(left, alphabet)
        l2 = _compile(right, alphabet)
        rep = decide_separation(expr, l1, l2, ptk_level=ptk)
        extra = {"imprint_size": rep.imprint_size}
        if witness and rep.coverable:
            base = tower_base(expr)
            if base.name == "PT":
                base = Base("PTK", ptk)
            found = extract_mpol_separator(base, l1, l2)
            if found:
                prods, k = found
                extra["witness"] = [dfalib.to_regex(p.language()) for p in prods]
                extra["witness_k"] = k
            else:
                extra["witness"] = "not_found_at_k"
    except UnsupportedClassError as e:
        _fail("separate", quiet, str(e))
    except Exception as e:  # noqa: BLE001
        _fail("separate", quiet, f"{type(e).__name__}: {e}")
    code = {"coverable": 0, "not_coverable": 1, "unknown_at_approximation": 3}[rep.verdict]
    _report(
        "separate",
        quiet,
        code,
        verdict=rep.verdict,
        certified=rep.certified,
        class_expr=rep.class_expr,
        ptk_level=rep.ptk_level,
        **extra,
    )


@main.command()
@click.option("--class", "class_expr", required=True)
@click.option("--target", required=True)
@click.option("--against", required=True, multiple=True)
@click.option("--alphabet", default=None)
@click.option("--ptk", default=3, show_default=True)
@click.option("--quiet", is_flag=True)
def cover(class_expr, target, against, alphabet, ptk, quiet):
    """Coverability of the target against the listed languages."""
    _report.t0 = time.time()
    try:
        expr = parse_class(class_expr)
        alphabet = alphabet or "".join(
            sorted(set(target + "".join(against)) & set("abcdefghijklmnopqrstuvwxyz"))
        )
        l0 = _compile(target, alphabet)
        others = [_compile(r, alphabet) for r in against]
        rep = decide_covering(expr, l0, others, ptk_level=ptk)
    except UnsupportedClassError as e:
        _fail("cover", quiet, str(e))
    except Exception as e:  # noqa: BLE001
        _fail("cover", quiet, f"{type(e).__name__}: {e}")
    code = {"coverable": 0, "not_coverable": 1, "unknown_at_approximation": 3}[rep.verdict]
    _report(
        "cover",
        quiet,
        code,
        verdict=rep.verdict,
        certified=rep.certified,
        class_expr=rep.class_expr,
        ptk_level=rep.ptk_level,
        imprint_size=rep.imprint_size,
    )


@main.command(name="classify-product")
@click.option("--parts", required=True, help='Alternating "R0 a1 R1 a2 R2 ..."')
@click.option("--alphabet", default=None)
@click.option("--quiet", is_flag=True)
def classify_product_cmd(parts, alphabet, quiet):
    """Determinism and unambiguity flags of a marked product."""
    _report.t0 = time.time()
    try:
        tokens = parts.split()
        regexes, letters = tokens[0::2], tokens[1::2]
        alphabet = alphabet or "".join(
            sorted(set("".join(tokens)) & set("abcdefghijklmnopqrstuvwxyz"))
        )
        dfas = tuple(_compile(r, alphabet) for r in regexes)
        product = MarkedProduct(dfas, tuple(letters))
        flags = classify_product(product)
    except Exception as e:  # noqa: BLE001
        _fail("classify-product", quiet, f"{type(e).__name__}: {e}")
    _report(
        "classify-product",
        quiet,
        0 if flags.unambiguous else 1,
        left_det=flags.left_det,
        right_det=flags.right_det,
        mixed_det=flags.mixed_det,
        unambiguous=flags.unambiguous,
    )


@main.command(name="word-class")
@click.option("--class-morphism", "morphism_spec", required=True,
              help="base:NAME for a canonical morphism or syntactic:REGEX")
@click.option("--k", required=True, type=int)
@click.option("--mode", required=True, type=click.Choice(["left", "right", "mixed"]))
@click.option("--word", required=True)
@click.option("--alphabet", default=None)
def word_class(morphism_spec, k, mode, word, alphabet):
    """The word's equivalence class as a marked product of regexes."""
    _report.t0 = time.time()
    kind, _, payload = morphism_spec.partition(":")
    alphabet = alphabet or "".join(sorted(set(word))) or "a"
    if kind == "base":
        eta = canonical_morphism(parse_class(payload), alphabet)
    elif kind == "syntactic":
        eta = syntactic_morphism(_compile(payload, alphabet)).morphism
    else:
        _fail("word-class", False, f"bad morphism spec {morphism_spec!r}")
    product = class_as_product(eta, k, mode, word)
    positions = marked_positions(eta, k, word, mode)
    click.echo(
        json.dumps(
            {
                "schema": SCHEMA,
                "command": "word-class",
                "positions": positions,
                "parts": [dfalib.to_regex(p) for p in product.parts],
                "letters": list(product.letters),
            },
            sort_keys=True,
        )
    )


@main.command()
@click.option("--k", required=True, type=int)
@click.option("--n", required=True, type=int)
@click.option("--left", required=True)
@click.option("--right", required=True)
@click.option("--eta", "eta_kind", default="trivial", type=click.Choice(["trivial", "at"]))
@click.option("--alphabet", default=None)
@click.option("--quiet", is_flag=True)
def ef(k, n, left, right, eta_kind, alphabet, quiet):
    """Rank-k depth-n preorder between two words."""
    _report.t0 = time.time()
    alphabet = alphabet or "".join(sorted(set(left + right))) or "a"
    base = parse_class("ST" if eta_kind == "trivial" else "AT")
    eta = canonical_morphism(base, alphabet)
    forward = ef_leq(eta, k, n, left, right)
    backward = ef_leq(eta, k, n, right, left)
    _report(
        "ef",
        quiet,
        0 if forward else 1,
        leq=forward,
        geq=backward,
        equivalent=forward and backward,
        k=k,
        n=n,
    )


@main.command()
@click.option("--file", "path", default=None, help="fixture file; default: shipped corpus")
@click.option("--quiet", is_flag=True)
@click.option("--limit", default=0, help="only run the first N fixtures")
def corpus(path, quiet, limit):
    """Run every fixture through the engines and check the cross-engine
    invariants; prints one pass/fail line per fixture."""
    _report.t0 = time.time()
    fixtures = load_corpus(path)
    if limit:
        fixtures = fixtures[:limit]
    battery = ["ST", "AT", "PT", "LPOL(AT)", "RPOL(AT)", "MPOL(AT)"]
    bridge_battery = ["AT", "LPOL(AT)", "RPOL(AT)", "MPOL(AT)"]
    failures = []
    ctx = Context()
    for fid, alphabet, regex, expected in fixtures:
        try:
            lang = _compile(regex, alphabet)
            verdicts = {}
            for cls in battery:
                verdicts[cls] = decide_membership(cls, lang, ctx)
            for cls, want in expected.items():
                got = verdicts.get(cls)
                if got is None:
                    got = decide_membership(cls, lang, ctx)
                    verdicts[cls] = got
                if got != want:
                    raise AssertionError(f"{cls}: expected {want}, engine says {got}")
            comp = dfalib.complement(lang)
            for cls in bridge_battery:
                sep = decide_separation(cls, lang, comp).coverable
                if sep != verdicts[cls]:
                    raise AssertionError(
                        f"{cls}: membership {verdicts[cls]} but separation-from-complement {sep}"
                    )
            shown = " ".join(f"{c}={'y' if v else 'n'}" for c, v in verdicts.items())
            if not quiet:
                click.echo(f"PASS {fid}: {shown}")
        except Exception as e:  # noqa: BLE001
            failures.append((fid, f"{type(e).__name__}: {e}"))
            click.echo(f"FAIL {fid}: {e}", err=not quiet)
    if failures:
        click.echo(f"{len(failures)} fixture(s) failed: {', '.join(f for f, _ in failures)}", err=True)
        sys.exit(2)
    if not quiet:
        click.echo(f"all {len(fixtures)} fixtures passed")
    sys.exit(0)


def load_corpus(path=None):
    """Fixture lines: `id ; alphabet ; regex ; CLASS=bool ...` (expected part
    optional)."""
    if path is None:
        from importlib.resources import files

        text = files("detpol").joinpath("data/corpus.txt").read_text()
    else:
        with open(path) as handle:
            text = handle.read()
    fixtures = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(";")]
        if len(fields) < 3:
            raise ValueError(f"bad corpus line: {line!r}")
        fid, alphabet, regex = fields[0], fields[1], fields[2]
        expected = {}
        if len(fields) > 3 and fields[3]:
            for item in fields[3].split():
                cls, _, val = item.partition("=")
                expected[cls] = val.lower() in ("1", "true", "yes", "y")
        fixtures.append((fid, alphabet, regex, expected))
    return fixtures
