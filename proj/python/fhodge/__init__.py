"""Exact formal Hodge structures and Laumon 1-motives over Q(i).

Every function takes documents as dicts or JSON strings and returns the
parsed JSON result. Invalid input raises DomainError, unparseable input
raises MalformedError.
"""

import json

from . import _core

__all__ = [
    "FhodgeError",
    "DomainError",
    "MalformedError",
    "validate",
    "etale",
    "connected",
    "special_part",
    "dual",
    "compare_iso",
    "realize",
    "arrow",
    "hodge",
    "univ_ext",
    "kernel",
    "cokernel",
    "check_exact",
    "hom",
    "roundtrip",
    "gen",
    "suite",
]


class FhodgeError(Exception):
    def __init__(self, diagnostic, report=None):
        super().__init__(diagnostic.get("message", ""))
        self.diagnostic = diagnostic
        self.report = report


class DomainError(FhodgeError):
    """The input parses but violates an axiom or a precondition."""


class MalformedError(FhodgeError):
    """The input is not a well-formed document."""


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def _run(command, *docs, **options):
    code, out, err = _core.execute(command, [_text(d) for d in docs], **options)
    result = json.loads(out) if out else None
    if code == _core.EXIT_OK:
        return result
    diagnostic = json.loads(err) if err else {}
    if code == _core.EXIT_MALFORMED:
        raise MalformedError(diagnostic)
    raise DomainError(diagnostic, result)


def validate(doc):
    return _run("validate", doc)


def etale(doc):
    return _run("etale", doc)


def connected(doc):
    return _run("connected", doc)


def special_part(doc):
    return _run("special-part", doc)


def dual(doc, check_iso=False):
    return _run("dual", doc, check_iso=check_iso)


def compare_iso(x, y):
    return _run("compare-iso", x, y)


def realize(doc):
    return _run("realize", doc)


def arrow(doc):
    return _run("arrow", doc)


def hodge(doc):
    return _run("hodge", doc)


def univ_ext(doc, report=False):
    return _run("univ-ext", doc, report=report)


def kernel(doc):
    return _run("kernel", doc)


def cokernel(doc):
    return _run("cokernel", doc)


def check_exact(doc):
    return _run("check-exact", doc)


def hom(x, y):
    return _run("hom", x, y)


def roundtrip(doc):
    return _run("roundtrip", doc)


def gen(profile, seed):
    return _run("gen", profile=profile, seed=seed)


def suite(seeds=1000, threads=0):
    return _run("suite", seeds=seeds, threads=threads)
