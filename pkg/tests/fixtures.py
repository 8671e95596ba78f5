"""Reference data for the 8x8 example, transcribed by hand.

Entries are Python expressions in t and T = 1/t so the transcription stays
close to the printed matrices.
"""

from __future__ import annotations

from teichpoly.exact import LaurentMatrix, LaurentPoly

THETA8 = "x^7 - x^6 - (2*t + 5 + 2*t^-1)*x^5 + x^4 - x^3 + (2*t + 5 + 2*t^-1)*x^2 + x - 1"

EIGENVECTOR8 = (0.0740679, 0.0874795, 0.187546, 0.134026, 0.21327, 0.117861, 0.139202, 0.0465469)
EIGENVECTOR8_TEXT = "0.0740679, 0.0874795, 0.187546, 0.134026, 0.21327, 0.117861, 0.139202, 0.0465469"

EIGENBASIS8 = (1, 0, 0, 0, -1, 0, 1, 0)

SEED8 = {1: 1, 2: None, 3: 1, 4: -1, 5: 1, 6: -1, 7: None}
ALIGNMENT8 = {1: 1, 2: -1, 3: 1, 4: -1, 5: 1, 6: -1, 7: 1}

# Step I: decoration exponent of s per column
STEP1_DECORATIONS = (1, 0, 0, 0, -1, 0, 1, 0)

STEP2 = """
0 0 0 0 0 0 1 t
0 0 0 0 1 T T 1
0 0 0 0 1 T T 0
0 0 1 1 1 T T 0
0 0 1 1 1 0 0 0
1 t t t t 0 0 0
1 t t 0 0 0 0 0
0 1 1 0 0 0 0 0
"""
# exponent of s left at the end of each row
STEP2_ENDS = (1, 0, 0, 0, -1, 0, 1, 0)

STEP3 = """
0 0 0 0 0 0 1 t t-1
0 0 0 0 1 T T 1 0
0 0 0 0 1 T T 0 0
0 0 1 1 1 T T 0 0
0 0 T T 2*T-1 2*T*(T-1) 2*T*(T-1) T-1 T-1
1 t t t t 0 0 0 0
t t**2 t**2+t-1 t**2-1 t**2+t-2 2-2*T 2-2*T t-1 t-1
0 1 1 0 0 0 0 0 0
"""

EDGE16 = """
0 0 0 0 0 0 1 t 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 1 1 1 1
0 0 0 0 1 T T 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 1 1 1 1 1 0
0 0 1 1 1 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 1 1 1 1 1 0 0 0
1 t t 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 1 1 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 1
0 0 0 0 1 T T 1 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 1 1 1 0
0 0 1 1 1 T T 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 1 1 1 0 0 0
1 t t t t 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 1 1 1 0 0 0 0 0
0 1 1 0 0 0 0 0 0 0 0 0 0 0 0 0
"""

VERTEX9 = """
0 0 0 0 0 0 1 0 0
0 0 0 0 0 0 0 0 1
0 0 0 0 1 0 0 0 0
0 0 0 0 0 0 0 1 0
0 0 1 0 0 0 0 0 0
0 0 0 0 0 1 0 0 0
1 0 0 0 0 0 0 0 0
0 0 0 1 0 0 0 0 0
0 1 0 0 0 0 0 0 0
"""

# numerator of the quotient before dividing by x - 1
MCMULLEN_NUMERATOR = (
    "x^8 - 2*x^7 - (2*t + 4 + 2*t^-1)*x^6 + (2*t + 6 + 2*t^-1)*x^5 - 2*x^4"
    " + (2*t + 6 + 2*t^-1)*x^3 - (2*t + 4 + 2*t^-1)*x^2 - 2*x + 1"
)


def laurent_matrix(text: str, variables=("t",)) -> LaurentMatrix:
    t = LaurentPoly.var(variables, "t")
    env = {"t": t, "T": t**-1}
    rows = []
    for line in text.strip().splitlines():
        rows.append([LaurentPoly.constant(variables, 0) + eval(tok, {}, env) for tok in line.split()])
    return LaurentMatrix(variables, rows)
