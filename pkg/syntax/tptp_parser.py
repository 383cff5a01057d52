"""
TPTP FOF subset parser.
Lexes and parses `fof(name, role, formula).` statements with ply and assembles
the single implication (axiom_1 & ... & axiom_n) => conjecture.

Grammar (see README for the full description):

    problem    ::= { "fof" "(" name "," role "," formula ")" "." }
    formula    ::= formula binop formula | "~" formula | "(" formula ")"
                 | ("!" | "?") "[" VAR { "," VAR } "]" ":" formula | atomic
    binop      ::= "<=>" | "=>" | "<=" | "<~>" | "~|" | "~&" | "|" | "&"
    atomic     ::= plain | term "=" term | term "!=" term
    plain      ::= lower_word [ "(" term { "," term } ")" ]
    term       ::= plain | VAR
"""

import threading
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import ply.lex as lex
import ply.yacc as yacc
from loguru import logger

from syntax.errors import (
    ArityClashError, DuplicateNameError, MissingConjectureError, ParseError,
)
from syntax.formulas import (
    And, Application, Atom, Exists, Forall, Formula, Iff, Imp, Neg, Or, Term,
    Variable, conjoin, ordered_free_variables, subformulas,
)
from syntax.normalize import alpha_normalize


AXIOM_ROLES = {"axiom", "hypothesis"}
CONJECTURE_ROLE = "conjecture"


@dataclass(frozen=True)
class AnnotatedFormula:
    """One `fof(...)` statement."""
    name: str
    role: str
    formula: Formula
    line: int


def _column(data: str, lexpos: int) -> int:
    return lexpos - data.rfind("\n", 0, lexpos)


class TPTPLexer:
    """ply token rules for the FOF subset."""

    tokens = (
        "IFF", "XOR", "IMPLIES", "REVIMP", "NOR", "NAND", "NEQ",
        "EQUALS", "NOT", "OR", "AND", "FORALL", "EXISTS",
        "LPAREN", "RPAREN", "LBRACKET", "RBRACKET", "COMMA", "COLON", "DOT",
        "UPPER_WORD", "LOWER_WORD", "INTEGER",
    )

    t_ignore = " \t\r"

    def t_COMMENT(self, t):
        r"%[^\n]*"
        pass

    def t_BLOCK_COMMENT(self, t):
        r"/\*(.|\n)*?\*/"
        t.lexer.lineno += t.value.count("\n")

    def t_newline(self, t):
        r"\n+"
        t.lexer.lineno += len(t.value)

    # Operators are function rules so the longest spelling is tried first.
    def t_IFF(self, t):
        r"<=>"
        return t

    def t_XOR(self, t):
        r"<~>"
        return t

    def t_IMPLIES(self, t):
        r"=>"
        return t

    def t_REVIMP(self, t):
        r"<="
        return t

    def t_NOR(self, t):
        r"~\|"
        return t

    def t_NAND(self, t):
        r"~&"
        return t

    def t_NEQ(self, t):
        r"!="
        return t

    def t_EQUALS(self, t):
        r"="
        return t

    def t_NOT(self, t):
        r"~"
        return t

    def t_OR(self, t):
        r"\|"
        return t

    def t_AND(self, t):
        r"&"
        return t

    def t_FORALL(self, t):
        r"!"
        return t

    def t_EXISTS(self, t):
        r"\?"
        return t

    def t_LPAREN(self, t):
        r"\("
        return t

    def t_RPAREN(self, t):
        r"\)"
        return t

    def t_LBRACKET(self, t):
        r"\["
        return t

    def t_RBRACKET(self, t):
        r"\]"
        return t

    def t_COMMA(self, t):
        r","
        return t

    def t_COLON(self, t):
        r":"
        return t

    def t_DOT(self, t):
        r"\."
        return t

    def t_UPPER_WORD(self, t):
        r"[A-Z][A-Za-z0-9_]*"
        return t

    def t_LOWER_WORD(self, t):
        r"[a-z][A-Za-z0-9_]*|'[^'\n]+'"
        return t

    def t_INTEGER(self, t):
        r"[0-9]+"
        return t

    def t_error(self, t):
        raise ParseError(
            f"Illegal character {t.value[0]!r}",
            t.lexer.lineno,
            _column(t.lexer.lexdata, t.lexpos),
        )

    def build(self):
        return lex.lex(module=self, debug=False, errorlog=lex.NullLogger())


class TPTPGrammar:
    """ply grammar productions; every action builds syntax.formulas values."""

    tokens = TPTPLexer.tokens
    start = "problem"

    precedence = (
        ("nonassoc", "IFF", "XOR", "IMPLIES", "REVIMP", "NOR", "NAND"),
        ("left", "OR"),
        ("left", "AND"),
        ("right", "NOT", "QUANT"),
    )

    def p_problem(self, p):
        "problem : statements"
        p[0] = p[1]

    def p_statements_more(self, p):
        "statements : statements statement"
        p[0] = p[1] + [p[2]]

    def p_statements_empty(self, p):
        "statements :"
        p[0] = []

    def p_statement(self, p):
        "statement : LOWER_WORD LPAREN name COMMA LOWER_WORD COMMA formula RPAREN DOT"
        if p[1] != "fof":
            raise ParseError(
                f"Unsupported statement kind {p[1]!r} (only fof)",
                p.lineno(1), _column(p.lexer.lexdata, p.lexpos(1)),
            )
        role = p[5]
        if role not in AXIOM_ROLES and role != CONJECTURE_ROLE:
            raise ParseError(
                f"Unsupported role {role!r}",
                p.lineno(5), _column(p.lexer.lexdata, p.lexpos(5)),
            )
        p[0] = AnnotatedFormula(name=p[3], role=role, formula=p[7], line=p.lineno(1))

    def p_name(self, p):
        """name : LOWER_WORD
                | UPPER_WORD
                | INTEGER"""
        p[0] = p[1]

    def p_formula_binary(self, p):
        """formula : formula IFF formula
                   | formula XOR formula
                   | formula IMPLIES formula
                   | formula REVIMP formula
                   | formula NOR formula
                   | formula NAND formula
                   | formula OR formula
                   | formula AND formula"""
        left, op, right = p[1], p[2], p[3]
        if op == "<=>":
            p[0] = Iff(left, right)
        elif op == "<~>":
            p[0] = Neg(Iff(left, right))
        elif op == "=>":
            p[0] = Imp(left, right)
        elif op == "<=":
            p[0] = Imp(right, left)
        elif op == "~|":
            p[0] = Neg(Or(left, right))
        elif op == "~&":
            p[0] = Neg(And(left, right))
        elif op == "|":
            p[0] = Or(left, right)
        else:
            p[0] = And(left, right)

    def p_formula_not(self, p):
        "formula : NOT formula %prec NOT"
        p[0] = Neg(p[2])

    def p_formula_quantified(self, p):
        """formula : FORALL LBRACKET varlist RBRACKET COLON formula %prec QUANT
                   | EXISTS LBRACKET varlist RBRACKET COLON formula %prec QUANT"""
        quantifier = Forall if p[1] == "!" else Exists
        body = p[6]
        for name in reversed(p[3]):
            body = quantifier(name, body)
        p[0] = body

    def p_formula_paren(self, p):
        "formula : LPAREN formula RPAREN"
        p[0] = p[2]

    def p_formula_atomic(self, p):
        "formula : atomic"
        p[0] = p[1]

    def p_varlist(self, p):
        """varlist : UPPER_WORD
                   | varlist COMMA UPPER_WORD"""
        p[0] = [p[1]] if len(p) == 2 else p[1] + [p[3]]

    def p_atomic_plain(self, p):
        "atomic : plain"
        p[0] = Atom(p[1].functor, p[1].args)

    def p_atomic_equality(self, p):
        """atomic : plain EQUALS term
                  | variable EQUALS term
                  | plain NEQ term
                  | variable NEQ term"""
        equation = Atom("=", (p[1], p[3]))
        p[0] = equation if p[2] == "=" else Neg(equation)

    def p_plain(self, p):
        """plain : LOWER_WORD
                 | LOWER_WORD LPAREN terms RPAREN"""
        p[0] = Application(p[1], tuple(p[3]) if len(p) == 5 else ())

    def p_terms(self, p):
        """terms : term
                 | terms COMMA term"""
        p[0] = [p[1]] if len(p) == 2 else p[1] + [p[3]]

    def p_term(self, p):
        """term : plain
                | variable"""
        p[0] = p[1]

    def p_variable(self, p):
        "variable : UPPER_WORD"
        p[0] = Variable(p[1])

    def p_error(self, p):
        if p is None:
            raise ParseError("Unexpected end of input")
        raise ParseError(
            f"Unexpected token {p.value!r}",
            p.lineno,
            _column(p.lexer.lexdata, p.lexpos),
        )


_lock = threading.Lock()
_machinery: Optional[Tuple[object, object]] = None


def _get_machinery():
    """Build the lexer and LALR tables once per process."""
    global _machinery
    if _machinery is None:
        lexer = TPTPLexer().build()
        parser = yacc.yacc(
            module=TPTPGrammar(), start="problem",
            debug=False, write_tables=False, errorlog=yacc.NullLogger(),
        )
        _machinery = (lexer, parser)
    return _machinery


def parse_statements(text: str) -> List[AnnotatedFormula]:
    """Parse raw annotated formulas without assembling a problem."""
    with _lock:
        lexer, parser = _get_machinery()
        lexer = lexer.clone()
        lexer.lineno = 1
        return parser.parse(text, lexer=lexer, tracking=True)


def _check_arities(statements: List[AnnotatedFormula]) -> None:
    functors: Dict[str, int] = {}
    predicates: Dict[str, int] = {}

    def visit_term(term: Term) -> None:
        if isinstance(term, Application):
            seen = functors.setdefault(term.functor, len(term.args))
            if seen != len(term.args):
                raise ArityClashError(term.functor, seen, len(term.args))
            for arg in term.args:
                visit_term(arg)

    for statement in statements:
        for sub in subformulas(statement.formula):
            if isinstance(sub, Atom):
                seen = predicates.setdefault(sub.predicate, len(sub.args))
                if seen != len(sub.args):
                    raise ArityClashError(sub.predicate, seen, len(sub.args))
                for arg in sub.args:
                    visit_term(arg)


def _universal_closure(formula: Formula) -> Formula:
    # TPTP reads free variables of a statement as universally quantified
    for name in reversed(ordered_free_variables(formula)):
        formula = Forall(name, formula)
    return formula


def assemble_problem(statements: List[AnnotatedFormula]) -> Formula:
    """Combine statements into (axioms) => conjecture and alpha-normalize."""
    names = set()
    for statement in statements:
        if statement.name in names:
            raise DuplicateNameError(f"Duplicate formula name {statement.name!r} (line {statement.line})")
        names.add(statement.name)

    conjectures = [s for s in statements if s.role == CONJECTURE_ROLE]
    if not conjectures:
        raise MissingConjectureError("Problem has no conjecture")
    if len(conjectures) > 1:
        raise ParseError("More than one conjecture", conjectures[1].line)

    _check_arities(statements)

    conjecture = _universal_closure(conjectures[0].formula)
    axioms = [_universal_closure(s.formula) for s in statements if s.role in AXIOM_ROLES]
    formula = Imp(conjoin(axioms), conjecture) if axioms else conjecture

    logger.debug(f"Assembled problem from {len(axioms)} axioms and one conjecture")
    return alpha_normalize(formula)


def parse_problem(text: str) -> Formula:
    """Parse a TPTP FOF problem into one closed, alpha-normalized formula."""
    return assemble_problem(parse_statements(text))
