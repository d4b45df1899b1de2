"""`.psy` program files: header directives plus a program body.

Header lines, before the body, ``#`` comments allowed::

    inputs SYM ...
    outputs SYM ...
    var NAME : bool
    var NAME : int[LO..HI]

Component base types are derived from the declared alphabets: a
component whose values are all ``tt``/``ff`` is boolean, one whose
values are all integer literals is an integer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..core import Alphabet, symbol_components
from ..errors import FormatError
from .semantics import Machine, VarDecl
from .syntax import Ast, parse
from .typecheck import COMM, Ty, typecheck

_INT_RE = re.compile(r"-?\d+$")
_VAR_RE = re.compile(
    r"var\s+([A-Za-z_][A-Za-z0-9_]*)\s*:\s*(bool|int\[(-?\d+)\.\.(-?\d+)\]|int)\s*$"
)


@dataclass(frozen=True)
class ProgramFile:
    name: str
    machine: Machine
    body: Ast

    def typecheck(self) -> Ty:
        env = {v.name: v.base for v in self.machine.variables}
        ty = typecheck(
            self.body, env, self.machine.in_types, self.machine.out_types
        )
        return ty


def component_types(alphabet: Alphabet, what: str) -> tuple[str, ...]:
    """Base type of each symbol component; all symbols must agree on arity."""
    arities = {len(symbol_components(s)) for s in alphabet}
    if len(arities) != 1:
        raise FormatError(f"{what} symbols have mixed arities {sorted(arities)}")
    arity = arities.pop()
    types = []
    for i in range(arity):
        values = {symbol_components(s)[i] for s in alphabet}
        if values <= {"tt", "ff"}:
            types.append("bool")
        elif all(_INT_RE.match(v) for v in values):
            types.append("int")
        else:
            raise FormatError(
                f"{what} component {i} mixes booleans and other tokens: "
                + " ".join(sorted(values))
            )
    return tuple(types)


def loads(text: str, source: str = "<string>", name: str = "program") -> ProgramFile:
    inputs = None
    outputs = None
    variables: list[VarDecl] = []
    body_lines = []
    in_body = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not in_body:
            if not stripped:
                body_lines.append("")
                continue
            tokens = stripped.split()
            if tokens[0] == "inputs":
                if inputs is not None:
                    raise FormatError(f"{source}:{lineno}: duplicate inputs")
                inputs = Alphabet(tuple(tokens[1:]))
                body_lines.append("")
                continue
            if tokens[0] == "outputs":
                if outputs is not None:
                    raise FormatError(f"{source}:{lineno}: duplicate outputs")
                outputs = Alphabet(tuple(tokens[1:]))
                body_lines.append("")
                continue
            if tokens[0] == "var":
                match = _VAR_RE.match(stripped)
                if not match:
                    raise FormatError(f"{source}:{lineno}: bad var declaration")
                vname, ty, low, high = match.groups()
                if any(v.name == vname for v in variables):
                    raise FormatError(f"{source}:{lineno}: duplicate var {vname}")
                if ty == "bool":
                    variables.append(VarDecl(vname, "bool"))
                elif ty == "int":
                    variables.append(VarDecl(vname, "int"))
                else:
                    variables.append(VarDecl(vname, "int", int(low), int(high)))
                body_lines.append("")
                continue
            in_body = True
        body_lines.append(raw)
    if inputs is None:
        raise FormatError(f"{source}: missing inputs directive")
    if outputs is None:
        raise FormatError(f"{source}: missing outputs directive")
    # Header lines were blanked, so parser positions match the file.
    body = parse("\n".join(body_lines))
    machine = Machine(
        inputs,
        outputs,
        component_types(inputs, "input"),
        component_types(outputs, "output"),
        tuple(variables),
    )
    return ProgramFile(name, machine, body)


def load(path) -> ProgramFile:
    import os

    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    stem = os.path.splitext(os.path.basename(str(path)))[0]
    return loads(text, source=str(path), name=stem)
