"""Frozen reference values for the couplings lambda(2)..lambda(5).

Each term is (coefficient, ((f, exponent), ...)) over the index-free moments
y_f, f ascending, with the y_1 Laurent power included.  Every table satisfies
the two gradings (sum of exponents = 2 - 2h, moment-weighted sum = h - 1) and
the moment cutoff f <= 3h - 2; the test suite re-derives all four tables from
the recursion and compares coefficient by coefficient.

Sign convention: the overall sign of each table is fixed by the recursion
itself, which determines every first derivative of lambda(h) from the orders
below it.  lambda(4) and lambda(5) are stored with that recursion-consistent
overall sign (the first-order identity at every unit index rejects the
opposite choice, which circulates in one transcription of these tables).
"""
from __future__ import annotations

from fractions import Fraction

from ..algebra import Expression, moment, term

TermTable = tuple[tuple[str, tuple[tuple[int, int], ...]], ...]

LAMBDA2: TermTable = (
    ("-21/160", ((1, -5), (2, 3))),
    ("29/128", ((1, -4), (2, 1), (3, 1))),
    ("-35/384", ((1, -3), (4, 1))),
)

LAMBDA3: TermTable = (
    ("2205/256", ((1, -10), (2, 6))),
    ("-8685/256", ((1, -9), (2, 4), (3, 1))),
    ("15375/512", ((1, -8), (2, 2), (3, 2))),
    ("5565/256", ((1, -8), (2, 3), (4, 1))),
    ("-72875/21504", ((1, -7), (3, 3))),
    ("-5605/256", ((1, -7), (2, 1), (3, 1), (4, 1))),
    ("-3213/256", ((1, -7), (2, 2), (5, 1))),
    ("21245/9216", ((1, -6), (4, 2))),
    ("2515/512", ((1, -6), (3, 1), (5, 1))),
    ("5929/1024", ((1, -6), (2, 1), (6, 1))),
    ("-5005/3072", ((1, -5), (7, 1))),
)

LAMBDA4: TermTable = (
    ("8437275/32768", ((1, -8), (5, 1), (6, 1))),
    ("-1511055/2048", ((1, -9), (2, 1), (5, 2))),
    ("12677665/32768", ((1, -8), (2, 1), (9, 1))),
    ("32418925/24576", ((1, -10), (3, 3), (4, 1))),
    ("-11532675/16384", ((1, -9), (3, 2), (6, 1))),
    ("10156575/32768", ((1, -8), (3, 1), (8, 1))),
    ("8913905/32768", ((1, -8), (4, 1), (7, 1))),
    ("-4456305/512", ((1, -13), (2, 6), (4, 1))),
    ("12829887/1024", ((1, -14), (2, 7), (3, 1))),
    ("-98342775/4096", ((1, -13), (2, 5), (3, 2))),
    ("12093543/2048", ((1, -12), (2, 5), (5, 1))),
    ("-15411627/4096", ((1, -11), (2, 4), (6, 1))),
    ("16200375/1024", ((1, -12), (2, 3), (3, 3))),
    ("44207163/20480", ((1, -10), (2, 3), (7, 1))),
    ("-83895625/32768", ((1, -11), (2, 1), (3, 4))),
    ("578655/128", ((1, -10), (2, 1), (3, 2), (5, 1))),
    ("-13024935/1024", ((1, -11), (2, 3), (3, 1), (5, 1))),
    ("-12367845/2048", ((1, -11), (2, 3), (4, 2))),
    ("-21023793/10240", ((1, -15), (2, 9))),
    ("26413065/1024", ((1, -12), (2, 4), (3, 1), (4, 1))),
    ("-7503125/36864", ((1, -9), (4, 3))),
    ("-4297293/4096", ((1, -9), (2, 2), (8, 1))),
    ("-2642325/2048", ((1, -9), (3, 1), (4, 1), (5, 1))),
    ("5472621/1024", ((1, -10), (2, 2), (3, 1), (6, 1))),
    ("10050831/2048", ((1, -10), (2, 2), (4, 1), (5, 1))),
    ("-8083075/98304", ((1, -7), (10, 1))),
    ("17562825/4096", ((1, -10), (2, 1), (3, 1), (4, 2))),
    ("-6968247/4096", ((1, -9), (2, 1), (3, 1), (7, 1))),
    ("-68294625/4096", ((1, -11), (2, 2), (3, 2), (4, 1))),
    ("-6242775/4096", ((1, -9), (2, 1), (4, 1), (6, 1))),
)

LAMBDA5: TermTable = (
    ("30087162105/32768", ((1, -12), (2, 2), (3, 1), (9, 1))),
    ("-20308307985/8192", ((1, -13), (2, 2), (4, 2), (5, 1))),
    ("26135514405/32768", ((1, -12), (2, 2), (4, 1), (8, 1))),
    ("-1336297095/512", ((1, -13), (2, 2), (3, 1), (5, 2))),
    ("-739690835625/32768", ((1, -15), (2, 4), (3, 2), (5, 1))),
    ("-10981859175/512", ((1, -15), (2, 4), (3, 1), (4, 2))),
    ("179984279475/32768", ((1, -14), (2, 4), (3, 1), (7, 1))),
    ("357630901425/32768", ((1, -14), (2, 2), (3, 2), (4, 2))),
    ("-98590152375/32768", ((1, -13), (2, 2), (3, 2), (7, 1))),
    ("24241354137/32768", ((1, -12), (2, 2), (5, 1), (7, 1))),
    ("-40226430195/4096", ((1, -15), (2, 5), (4, 1), (5, 1))),
    ("1632433564125/32768", ((1, -16), (2, 5), (3, 2), (4, 1))),
    ("-350207643555/32768", ((1, -15), (2, 5), (3, 1), (6, 1))),
    ("-261787425795/8192", ((1, -17), (2, 7), (3, 1), (4, 1))),
    ("9732778965/512", ((1, -16), (2, 6), (3, 1), (5, 1))),
    ("37121844375/4096", ((1, -14), (2, 3), (3, 2), (6, 1))),
    ("-11830867475/8192", ((1, -13), (2, 1), (3, 1), (4, 3))),
    ("8775042255/8192", ((1, -20), (2, 12))),
    ("877489930625/262144", ((1, -14), (2, 1), (3, 4), (4, 1))),
    ("-12359275929/65536", ((1, -11), (2, 1), (6, 1), (7, 1))),
    ("-3222490635/16384", ((1, -11), (2, 1), (5, 1), (8, 1))),
    ("-33732646101/16384", ((1, -13), (2, 3), (5, 1), (6, 1))),
    ("26915796875/262144", ((1, -14), (3, 6))),
    ("-217019504625/131072", ((1, -13), (2, 1), (3, 3), (6, 1))),
    ("-12983424025/131072", ((1, -11), (3, 2), (9, 1))),
    ("5553643095/4096", ((1, -14), (2, 5), (8, 1))),
    ("2109682575/65536", ((1, -10), (4, 1), (10, 1))),
    ("136426972815/8192", ((1, -14), (2, 3), (3, 1), (4, 1), (5, 1))),
    ("12753475735/262144", ((1, -10), (2, 1), (12, 1))),
    ("-35383072725/16384", ((1, -15), (2, 6), (7, 1))),
    ("52671571029/16384", ((1, -16), (2, 7), (6, 1))),
    ("-1122904568025/32768", ((1, -17), (2, 6), (3, 3))),
    ("-74926833597/16384", ((1, -17), (2, 8), (5, 1))),
    ("-20420786925/262144", ((1, -11), (3, 1), (6, 2))),
    ("-8203397345/32768", ((1, -11), (2, 1), (3, 1), (10, 1))),
    ("37992975405/65536", ((1, -12), (2, 1), (4, 2), (6, 1))),
    ("250975486125/32768", ((1, -14), (2, 2), (3, 3), (5, 1))),
    ("-144886833945/16384", ((1, -19), (2, 10), (3, 1))),
    ("147985547535/16384", ((1, -16), (2, 6), (4, 2))),
    ("-10137152025/4096", ((1, -13), (2, 3), (3, 1), (8, 1))),
    ("-21786582125/32768", ((1, -13), (3, 3), (4, 2))),
    ("3611933325/131072", ((1, -10), (6, 1), (8, 1))),
    ("161462697165/32768", ((1, -14), (2, 4), (4, 1), (6, 1))),
    ("9188135775/16384", ((1, -12), (2, 1), (4, 1), (5, 2))),
    ("-5226845715/32768", ((1, -11), (3, 1), (5, 1), (7, 1))),
    ("-91746650625/262144", ((1, -13), (3, 4), (5, 1))),
    ("21601719825/8192", ((1, -14), (2, 3), (4, 3))),
    ("-176853471795/32768", ((1, -13), (2, 2), (3, 1), (4, 1), (6, 1))),
    ("2481504025/65536", ((1, -10), (3, 1), (11, 1))),
    ("-951059690625/262144", ((1, -15), (2, 2), (3, 5))),
    ("12688164489/32768", ((1, -12), (2, 3), (10, 1))),
    ("26018510375/131072", ((1, -12), (3, 3), (7, 1))),
    ("19518799797/8192", ((1, -14), (2, 4), (5, 2))),
    ("-4685481675/32768", ((1, -11), (4, 1), (5, 1), (6, 1))),
    ("-17861648805/8192", ((1, -13), (2, 3), (4, 1), (7, 1))),
    ("16063796175/32768", ((1, -12), (3, 1), (4, 2), (5, 1))),
    ("47335422519/131072", ((1, -12), (2, 2), (6, 2))),
    ("625336273125/32768", ((1, -16), (2, 4), (3, 4))),
    ("430379379675/16384", ((1, -18), (2, 8), (3, 2))),
    ("24057537075/32768", ((1, -12), (2, 1), (3, 2), (8, 1))),
    ("-7044102065/32768", ((1, -11), (2, 1), (4, 1), (9, 1))),
    ("20008618245/16384", ((1, -12), (2, 1), (3, 1), (5, 1), (6, 1))),
    ("-74747945475/16384", ((1, -13), (2, 1), (3, 2), (4, 1), (5, 1))),
    ("42370573245/32768", ((1, -12), (2, 1), (3, 1), (4, 1), (7, 1))),
    ("69991007625/131072", ((1, -12), (3, 2), (4, 1), (6, 1))),
    ("-5635204575/32768", ((1, -11), (3, 1), (4, 1), (8, 1))),
    ("104068152405/16384", ((1, -18), (2, 9), (4, 1))),
    ("-861719557125/32768", ((1, -15), (2, 3), (3, 3), (4, 1))),
    ("1909423425/65536", ((1, -10), (5, 1), (9, 1))),
    ("-25370560215/32768", ((1, -13), (2, 4), (9, 1))),
    ("-5234922693/32768", ((1, -11), (2, 2), (11, 1))),
    ("5081656475/131072", ((1, -12), (4, 4))),
    ("3545717175/262144", ((1, -10), (7, 2))),
    ("-6506875375/786432", ((1, -9), (13, 1))),
    ("-4154848425/180224", ((1, -11), (5, 3))),
    ("8459871525/32768", ((1, -12), (3, 2), (5, 2))),
    ("-4958959005/65536", ((1, -11), (4, 2), (7, 1))),
)

GOLDEN_LAMBDA: dict[int, TermTable] = {2: LAMBDA2, 3: LAMBDA3, 4: LAMBDA4, 5: LAMBDA5}

# Term counts of lambda(h) for h = 0 and 2..10 (h = 1 is the logarithm).
TERM_COUNTS: dict[int, int] = {
    0: 1, 2: 3, 3: 11, 4: 30, 5: 77,
    6: 176, 7: 385, 8: 792, 9: 1575, 10: 3010,
}


def as_expression(table: TermTable) -> Expression:
    out: Expression = {}
    for coeff, factors in table:
        e = term(Fraction(coeff), [(moment(f), ex) for f, ex in factors])
        for m, c in e.items():
            if m in out:
                raise ValueError(f"duplicate golden monomial {m}")
            out[m] = c
    return out
