"""Command line front end.

One verb per library operation. Reports go to stdout, as sorted-key
JSON under --json (byte-stable for a fixed command and seed) or as
plain key: value lines otherwise. Exit status 0 on success, 1 on a
domain error (the report then carries the typed error code), 2 on a
parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .basepoints import char_vector_partial, rational_proper_base_points
from .bipoly import render_bpoly
from .decompose import (
    decompose_greedy,
    decompose_polyaut,
    homogenize,
    jung_factorize,
    parse_polyauto,
    verify_word,
)
from .errors import CremonaError, ParseError
from .homaloidal import (
    CharVector,
    bounds,
    descent,
    enumerate_homaloidal,
    jh,
    lamy_trace,
    noether_check,
)
from .maps import (
    classify_quadratic,
    compose,
    parse_map,
    render_map,
    word_from_json,
    word_to_json,
)


def _load_json_arg(arg: str):
    """File path or inline JSON text."""
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = arg
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc.msg}", exc.pos)


def _cmd_info(ns) -> dict:
    f = parse_map(ns.map)
    return {"degree": f.degree, "map": render_map(f)}


def _cmd_compose(ns) -> dict:
    f = compose(parse_map(ns.outer), parse_map(ns.inner))
    return {"degree": f.degree, "map": render_map(f)}


def _cmd_classify(ns) -> dict:
    return {"orbit": classify_quadratic(parse_map(ns.map)).value}


def _cmd_basepoints(ns) -> dict:
    return rational_proper_base_points(parse_map(ns.map), ns.seed).to_json()


def _cmd_charvec(ns) -> dict:
    return char_vector_partial(parse_map(ns.map), ns.seed).to_json()


def _cmd_noether(ns) -> dict:
    return {"satisfied": noether_check(CharVector.from_json(_load_json_arg(ns.vector)))}


def _cmd_bounds(ns) -> dict:
    b = bounds(ns.degree)
    return {"lower": b.lower, "upper_general": b.upper_general,
            "upper_polyaut": b.upper_polyaut}


def _cmd_enumerate(ns) -> dict:
    vectors = enumerate_homaloidal(ns.degree)
    return {"count": len(vectors), "vectors": [list(v) for v in vectors]}


def _cmd_jh(ns) -> dict:
    return {"jh": jh(CharVector.from_json(_load_json_arg(ns.vector))).to_json()}


def _cmd_descent(ns) -> dict:
    return descent(CharVector.from_json(_load_json_arg(ns.vector))).to_json()


def _cmd_decompose(ns) -> dict:
    f = parse_map(ns.map)
    w = decompose_greedy(f, ns.seed)
    check = verify_word(w, f)
    return {"sigma_count": w.sigma_count, "verified": check.verified,
            "word": word_to_json(w)}


def _cmd_decompose_aut(ns) -> dict:
    F = parse_polyauto(ns.aut)
    w = decompose_polyaut(F)
    check = verify_word(w, homogenize(F))
    return {"sigma_count": w.sigma_count, "verified": check.verified,
            "word": word_to_json(w)}


def _cmd_jung(ns) -> dict:
    factors = jung_factorize(parse_polyauto(ns.aut))
    return {"factors": [
        {"kind": f.kind.value, "p": render_bpoly(f.p), "q": render_bpoly(f.q)}
        for f in factors
    ]}


def _cmd_verify_word(ns) -> dict:
    w = word_from_json(_load_json_arg(ns.word))
    return verify_word(w, parse_map(ns.map)).to_json()


def _cmd_lamy_trace(ns) -> dict:
    return lamy_trace(ns.degree, ns.base_count).to_json()


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="cremona",
        description="exact plane Cremona map calculations")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="machine-readable report")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized internals (default 0)")
    sub = top.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    p = verb("info", _cmd_info, "degree and canonical form of a map")
    p.add_argument("map")
    p = verb("compose", _cmd_compose, "compose two maps (first after second)")
    p.add_argument("outer")
    p.add_argument("inner")
    p = verb("classify", _cmd_classify, "quadratic orbit of a degree-2 map")
    p.add_argument("map")
    p = verb("basepoints", _cmd_basepoints, "rational proper base points")
    p.add_argument("map")
    p = verb("charvec", _cmd_charvec, "observable characteristic vector")
    p.add_argument("map")
    p = verb("noether", _cmd_noether, "check the two degree equations")
    p.add_argument("vector", help="characteristic vector as JSON (inline or file)")
    p = verb("bounds", _cmd_bounds, "sigma-count bounds at a degree")
    p.add_argument("degree", type=int)
    p = verb("enumerate", _cmd_enumerate, "homaloidal multiplicity multisets")
    p.add_argument("degree", type=int)
    p = verb("jh", _cmd_jh, "descent pair of a complete vector")
    p.add_argument("vector")
    p = verb("descent", _cmd_descent, "combinatorial quadratic descent trace")
    p.add_argument("vector")
    p = verb("decompose", _cmd_decompose, "greedy word for a rational map")
    p.add_argument("map")
    p = verb("decompose-aut", _cmd_decompose_aut,
             "word for a polynomial automorphism")
    p.add_argument("aut", help="automorphism as '(p(X,Y), q(X,Y))'")
    p = verb("jung", _cmd_jung, "affine and elementary factors")
    p.add_argument("aut")
    p = verb("verify-word", _cmd_verify_word, "evaluate a word against a map")
    p.add_argument("word", help="word as JSON (inline or file)")
    p.add_argument("map")
    p = verb("lamy-trace", _cmd_lamy_trace, "base point count bookkeeping")
    p.add_argument("degree", type=int)
    p.add_argument("base_count", type=int)
    return top


def _emit(payload: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True))
        return
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, (dict, list)):
            print(f"{key}: {json.dumps(value, sort_keys=True)}")
        else:
            print(f"{key}: {value}")


def run(argv) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    as_json = getattr(ns, "json", False)
    try:
        payload = ns.func(ns)
    except ParseError as exc:
        _emit({"error": exc.code, "message": str(exc),
               "position": exc.position}, as_json)
        return 2
    except CremonaError as exc:
        _emit({"error": exc.code, "message": str(exc)}, as_json)
        return 1
    _emit(payload, as_json)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
