"""Line-oriented workspace files.

A workspace file holds any number of blocks, each opened by a header line::

    group <name>            fgroup <name>         hom <name>                 code <name>
    order <n>               group <group-name>    source <fgroup-name>       field <p>
    table                   domain <|X|>          target <fgroup-name>       length <n>
    <n rows of n indices>   gen <i0> ... <i_m>    pair <f...> -> <g...>      dim <k>
                                                                             row <n digits>

``#`` starts a comment. Blank lines are ignored. Names are unique per kind.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .codes import LinearCode, code_from_matrix
from .errors import DanglingReference, DuplicateName, ParseError, SepcompError
from .fgroups import FunctionGroup, closure_generate
from .groups import FiniteGroup, make_from_table
from .homs import GroupHom, hom_from_images

HEADERS = ("group", "fgroup", "hom", "code")


@dataclass
class Workspace:
    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    fgroups: dict[str, FunctionGroup] = field(default_factory=dict)
    homs: dict[str, GroupHom] = field(default_factory=dict)
    codes: dict[str, LinearCode] = field(default_factory=dict)

    def lookup(self, kind: str, name: str):
        table = getattr(self, kind)
        if name not in table:
            raise DanglingReference(f"no {kind[:-1]} named '{name}'")
        return table[name]


@dataclass
class _Line:
    path: str
    lineno: int
    tokens: list[str]
    columns: list[int]

    def error(self, msg, tok=0):
        col = self.columns[tok] if tok < len(self.columns) else (self.columns[-1] if self.columns else 1)
        return ParseError(msg, self.path, self.lineno, col)

    def ints(self, start=1, stop=None):
        out = []
        for i in range(start, len(self.tokens) if stop is None else stop):
            try:
                out.append(int(self.tokens[i]))
            except ValueError:
                raise self.error(f"expected an integer, got '{self.tokens[i]}'", i) from None
        return out


def _tokenize(text: str, path: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens, cols = [], []
        i = 0
        while i < len(line):
            if line[i].isspace():
                i += 1
                continue
            j = i
            while j < len(line) and not line[j].isspace():
                j += 1
            tokens.append(line[i:j])
            cols.append(i + 1)
            i = j
        if tokens:
            yield _Line(path, lineno, tokens, cols)


def _blocks(lines):
    block = None
    for ln in lines:
        # inside an fgroup block the first 'group' line names its value group
        in_fgroup = block is not None and block[0].tokens[0] == "fgroup"
        is_field = in_fgroup and ln.tokens[0] == "group" and not any(b.tokens[0] == "group" for b in block[1:])
        if ln.tokens[0] in HEADERS and not is_field:
            if len(ln.tokens) != 2:
                raise ln.error(f"'{ln.tokens[0]}' header takes exactly one name")
            if block:
                yield block
            block = [ln]
        elif block is None:
            raise ln.error(f"expected one of {', '.join(HEADERS)}")
        else:
            block.append(ln)
    if block:
        yield block


def _single_int(ln: _Line) -> int:
    if len(ln.tokens) != 2:
        raise ln.error(f"'{ln.tokens[0]}' takes exactly one integer")
    return ln.ints()[0]


def _parse_group(block) -> tuple[str, FiniteGroup]:
    head = block[0]
    name = head.tokens[1]
    order = None
    rows = []
    it = iter(block[1:])
    for ln in it:
        key = ln.tokens[0]
        if key == "order":
            order = _single_int(ln)
        elif key == "table":
            if order is None:
                raise ln.error("'order' must precede 'table'")
            for _ in range(order):
                row_ln = next(it, None)
                if row_ln is None:
                    raise ln.error(f"table needs {order} rows")
                row = row_ln.ints(0)
                if len(row) != order:
                    raise row_ln.error(f"table row has {len(row)} entries, expected {order}", min(len(row), order))
                rows.append(row)
        else:
            raise ln.error(f"unexpected '{key}' in group block")
    if order is None or not rows:
        raise head.error("group block needs 'order' and 'table'")
    try:
        return name, make_from_table(rows, name=name)
    except SepcompError as exc:
        raise head.error(f"invalid group table: {exc}") from exc


def parse_text(text: str, path: str = "<input>", ws: Workspace | None = None) -> Workspace:
    ws = Workspace() if ws is None else ws
    pending_fgroups, pending_homs = [], []
    for block in _blocks(_tokenize(text, path)):
        kind, name = block[0].tokens
        if kind == "group":
            name, g = _parse_group(block)
            _put(ws.groups, name, g, block[0])
        elif kind == "fgroup":
            pending_fgroups.append(block)
        elif kind == "hom":
            pending_homs.append(block)
        else:
            _put(ws.codes, name, _parse_code(block), block[0])
    for block in pending_fgroups:
        _put(ws.fgroups, block[0].tokens[1], _parse_fgroup(block, ws), block[0])
    for block in pending_homs:
        _put(ws.homs, block[0].tokens[1], _parse_hom(block, ws), block[0])
    return ws


def _put(table, name, value, ln):
    if name in table:
        raise DuplicateName(f"{ln.path}:{ln.lineno}: duplicate name '{name}'")
    table[name] = value


def _parse_fgroup(block, ws: Workspace) -> FunctionGroup:
    head = block[0]
    gname, domain, gens = None, None, []
    for ln in block[1:]:
        key = ln.tokens[0]
        if key == "group":
            if len(ln.tokens) != 2:
                raise ln.error("'group' takes one name")
            gname = ln.tokens[1]
        elif key == "domain":
            domain = _single_int(ln)
        elif key == "gen":
            gens.append((ln, ln.ints()))
        else:
            raise ln.error(f"unexpected '{key}' in fgroup block")
    if gname is None or domain is None:
        raise head.error("fgroup block needs 'group' and 'domain'")
    group = ws.lookup("groups", gname)
    for ln, g in gens:
        if len(g) != domain:
            raise ln.error(f"generator has {len(g)} entries, expected {domain}")
        if any(not 0 <= v < group.order for v in g):
            raise ln.error(f"generator entry outside 0..{group.order - 1}")
    return closure_generate(group, domain, [g for _, g in gens], name=head.tokens[1])


def _parse_hom(block, ws: Workspace) -> GroupHom:
    head = block[0]
    src = tgt = None
    pairs = []
    for ln in block[1:]:
        key = ln.tokens[0]
        if key in ("source", "target"):
            if len(ln.tokens) != 2:
                raise ln.error(f"'{key}' takes one name")
            if key == "source":
                src = ln.tokens[1]
            else:
                tgt = ln.tokens[1]
        elif key == "pair":
            if "->" not in ln.tokens:
                raise ln.error("pair needs '->'")
            k = ln.tokens.index("->")
            pairs.append((ln, ln.ints(1, k), ln.ints(k + 1)))
        else:
            raise ln.error(f"unexpected '{key}' in hom block")
    if src is None or tgt is None:
        raise head.error("hom block needs 'source' and 'target'")
    A = ws.lookup("fgroups", src)
    B = ws.lookup("fgroups", tgt)
    for ln, left, right in pairs:
        if len(left) != A.domain_size or len(right) != B.domain_size:
            raise ln.error("pair sides must match the source and target domain sizes")
    return hom_from_images(A, B, [(l, r) for _, l, r in pairs], name=head.tokens[1])


def _parse_code(block) -> LinearCode:
    head = block[0]
    p = n = k = None
    rows = []
    for ln in block[1:]:
        key = ln.tokens[0]
        if key == "field":
            p = _single_int(ln)
        elif key == "length":
            n = _single_int(ln)
        elif key == "dim":
            k = _single_int(ln)
        elif key == "row":
            toks = ln.tokens[1:]
            if len(toks) == 1 and n is not None and len(toks[0]) == n and n > 1:
                toks = list(toks[0])
            try:
                rows.append((ln, [int(t) for t in toks]))
            except ValueError:
                raise ln.error("row entries must be digits", 1) from None
        else:
            raise ln.error(f"unexpected '{key}' in code block")
    if p is None or n is None or k is None:
        raise head.error("code block needs 'field', 'length' and 'dim'")
    if len(rows) != k:
        raise head.error(f"code declares dim {k} but has {len(rows)} rows")
    for ln, r in rows:
        if len(r) != n:
            raise ln.error(f"row has {len(r)} entries, expected {n}")
        if any(not 0 <= v < p for v in r):
            raise ln.error(f"row entries must lie in 0..{p - 1}")
    try:
        return code_from_matrix(p, [r for _, r in rows], n=n, k=k, name=head.tokens[1])
    except SepcompError as exc:
        raise head.error(str(exc)) from exc


def parse_workspace(paths) -> Workspace:
    """Parse several files into one workspace.

    Files are read in order; later files may refer to names from earlier
    ones.
    """
    ws = Workspace()
    for p in paths:
        path = Path(p)
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise ParseError(f"cannot read file: {exc}", str(path), 0, 0) from exc
        parse_text(text, str(path), ws)
    return ws


def format_group(g: FiniteGroup, name: str | None = None) -> str:
    lines = [f"group {name or g.name or 'G'}", f"order {g.order}", "table"]
    lines += [" ".join(map(str, row)) for row in g.table]
    return "\n".join(lines) + "\n"


def format_code(c: LinearCode, name: str | None = None) -> str:
    lines = [f"code {name or c.name or 'C'}", f"field {c.p}", f"length {c.n}", f"dim {c.k}"]
    lines += ["row " + " ".join(map(str, r)) for r in c.generator_rows]
    return "\n".join(lines) + "\n"
