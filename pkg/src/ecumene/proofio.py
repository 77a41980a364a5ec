"""Reading and writing proofs in the s-expression file format::

    node := (hyp <label> "<formula>")
          | (<rule> "<conclusion>" [:d <label>...] [:eigen <ident>] [:wit "<term>"] <node>...)

Lines starting with ``;`` are comments.  Corpus files carry a header comment
``;; system: <s> expect: ok|fail judgment: "<ctx |- goal>"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from ecumene.kernel import Hyp, Infer, Judgment, Proof, check
from ecumene.syntax import ParseError, System, parse_formula, parse_sequent, parse_term, print_formula

_TOK = re.compile(r'\s+|;[^\n]*|(?P<tok>\(|\)|"[^"]*"|[^\s()";]+)')


def _tokens(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m:
            raise ParseError("unterminated string", pos, text)
        if m.group("tok"):
            out.append((m.group("tok"), pos))
        pos = m.end()
    return out


def _read_sexpr(tokens, i: int):
    tok, pos = tokens[i]
    if tok != "(":
        return tok, i + 1
    items = []
    i += 1
    while True:
        if i >= len(tokens):
            raise ParseError("missing ')'", pos)
        if tokens[i][0] == ")":
            return items, i + 1
        item, i = _read_sexpr(tokens, i)
        items.append(item)


def _unquote(tok, what: str) -> str:
    if not (isinstance(tok, str) and len(tok) >= 2 and tok[0] == tok[-1] == '"'):
        raise ParseError(f"expected quoted {what}, got {tok!r}")
    return tok[1:-1]


def _int(tok) -> int:
    try:
        return int(tok)
    except (TypeError, ValueError):
        raise ParseError(f"expected a label, got {tok!r}") from None


def _build(node, system: System) -> Proof:
    if not isinstance(node, list) or not node:
        raise ParseError(f"expected a proof node, got {node!r}")
    head = node[0]
    if head == "hyp":
        if len(node) != 3:
            raise ParseError("hyp takes a label and a formula")
        return Hyp(_int(node[1]), parse_formula(_unquote(node[2], "formula"), system))
    if len(node) < 2:
        raise ParseError(f"node {head!r} lacks a conclusion")
    conclusion = parse_formula(_unquote(node[1], "formula"), system)
    discharges: list[int] = []
    eigen = witness = None
    premises = []
    i = 2
    while i < len(node):
        item = node[i]
        if item == ":d":
            i += 1
            while i < len(node) and isinstance(node[i], str) and node[i].isdigit():
                discharges.append(int(node[i]))
                i += 1
            continue
        if item == ":eigen":
            eigen = node[i + 1]
            i += 2
            continue
        if item == ":wit":
            witness = parse_term(_unquote(node[i + 1], "term"))
            i += 2
            continue
        if isinstance(item, str):
            raise ParseError(f"unexpected token {item!r} in node {head!r}")
        premises.append(_build(item, system))
        i += 1
    return Infer(head, conclusion, tuple(premises), tuple(discharges), eigen, witness)


def parse_proof(text: str, system: System | str) -> Proof:
    """Parse one proof; formulas are read in the dialect of ``system``."""
    system = System.parse(system)
    tokens = _tokens(text)
    if not tokens:
        raise ParseError("empty proof file")
    tree, i = _read_sexpr(tokens, 0)
    if i != len(tokens):
        raise ParseError("more than one node at top level", tokens[i][1])
    return _build(tree, system)


def format_proof(p: Proof, system: System | str, indent: int = 0) -> str:
    system = System.parse(system)
    pad = "  " * indent
    if isinstance(p, Hyp):
        return f'{pad}(hyp {p.label} "{print_formula(p.formula, system)}")'
    head = f'{pad}({p.rule} "{print_formula(p.conclusion, system)}"'
    if p.discharges:
        head += " :d " + " ".join(map(str, p.discharges))
    if p.eigen is not None:
        head += f" :eigen {p.eigen}"
    if p.witness is not None:
        head += f' :wit "{p.witness}"'
    if not p.premises:
        return head + ")"
    body = "\n".join(format_proof(q, system, indent + 1) for q in p.premises)
    return f"{head}\n{body})"


# -- corpus headers ---------------------------------------------------------

_HEADER = re.compile(
    r';;\s*system:\s*(?P<system>\w+)\s+expect:\s*(?P<expect>ok|fail)\s+judgment:\s*"(?P<judgment>[^"]*)"'
)


@dataclass(frozen=True)
class CorpusEntry:
    path: Path
    system: System
    expect: str
    judgment: str
    proof: Proof


def read_corpus_file(path: str | Path) -> CorpusEntry:
    path = Path(path)
    text = path.read_text()
    m = _HEADER.search(text)
    if not m:
        raise ParseError(f"{path.name}: missing or malformed ';; system: ... expect: ... judgment: ...' header")
    system = System.parse(m["system"])
    return CorpusEntry(path, system, m["expect"], m["judgment"], parse_proof(text, system))


# -- corpus runs --------------------------------------------------------------


@dataclass(frozen=True)
class CorpusResult:
    name: str
    system: str
    expect: str
    got: str
    detail: str

    @property
    def passed(self) -> bool:
        return self.expect == self.got


def bundled_corpus() -> Path:
    """Directory of the proof files shipped with the package."""
    return Path(__file__).with_name("corpus")


def check_entry(entry: CorpusEntry) -> CorpusResult:
    """Check one corpus file against its header.

    ``ok`` means the proof checks and proves exactly the header's judgment;
    anything else counts as ``fail``.
    """
    report = check(entry.system, entry.proof)
    if report.ok:
        context, goal = parse_sequent(entry.judgment, entry.system)
        claimed = Judgment(tuple(context), goal)
        if report.judgment.same_as(claimed):
            return CorpusResult(entry.path.name, entry.system.value, entry.expect, "ok", report.render(entry.system))
        detail = f"proves {report.judgment.render(entry.system)}, header says {entry.judgment}"
        return CorpusResult(entry.path.name, entry.system.value, entry.expect, "fail", detail)
    return CorpusResult(entry.path.name, entry.system.value, entry.expect, "fail", report.render(entry.system))


def corpus_run(directory: str | Path) -> list[CorpusResult]:
    """Check every ``*.proof`` file in ``directory``, in name order."""
    return [check_entry(read_corpus_file(path)) for path in sorted(Path(directory).glob("*.proof"))]
