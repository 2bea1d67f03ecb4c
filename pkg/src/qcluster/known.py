"""Reference data: σ-images and relations used as test fixtures."""

from __future__ import annotations

# σ_1 on Gr(2,4)
GR24_SIGMA1 = {
    "D(1,2)": "D(1,2)",
    "D(1,3)": "D(2,4)",
    "D(1,4)": "[D(1,2) D(1,4)^-1 D(3,4)]",
    "D(2,3)": "[D(1,2) D(2,3)^-1 D(3,4)]",
    "D(3,4)": "D(3,4)",
}

GR24_RELATIONS = [
    ("plucker", "D(1,3)*D(2,4)", "q^{-1}*D(1,2)*D(3,4) + q*D(1,4)*D(2,3)"),
    ("commutation", "D(1,4)*D(2,3)", "D(2,3)*D(1,4)"),
]

# σ_1 and σ_2 on the 22 cluster variables of Gr(3,6), as (label, σ_1, σ_2).
GR36_TABLE = [
    ("D(1,2,3)", "D(1,2,3)", "D(1,2,3)"),
    ("D(2,3,4)", "[D(1,2,3) D(2,3,4)^-1 D(3,4,5)]", "D(2,3,4)"),
    ("D(3,4,5)", "D(3,4,5)", "[D(2,3,4) D(3,4,5)^-1 D(4,5,6)]"),
    ("D(4,5,6)", "D(4,5,6)", "D(4,5,6)"),
    ("D(1,2,6)", "D(1,2,6)", "[D(1,2,3) D(1,2,6)^-1 D(1,5,6)]"),
    ("D(1,5,6)", "[D(1,2,6) D(1,5,6)^-1 D(4,5,6)]", "D(1,5,6)"),
    ("D(1,2,4)", "D(1,2,5)", "D(1,3,4)"),
    ("D(1,2,5)", "[D(1,2,6) D(1,5,6)^-1 D(1,4,5)]", "D(1,3,6)"),
    ("D(1,3,4)", "D(2,3,5)", "[D(1,4,5) D(3,4,5)^-1 D(2,3,4)]"),
    ("D(1,3,5)", "[D(1,5,6)^-1 z]", "[D(3,4,5)^-1 z]"),
    ("D(1,3,6)", "D(2,3,6)", "[D(1,2,3) D(1,5,6) D(2,4,5) D(1,2,6)^-1 D(3,4,5)^-1]"),
    ("D(1,4,5)", "D(2,4,5)", "D(1,4,6)"),
    ("D(1,4,6)", "D(2,5,6)", "[D(1,2,4) D(1,2,6)^-1 D(1,5,6)]"),
    ("D(2,3,5)", "[D(1,2,3) D(1,4,6) D(1,5,6)^-1 D(2,3,4)^-1 D(3,4,5)]", "D(2,3,6)"),
    ("D(2,3,6)", "[D(1,2,3) D(2,3,4)^-1 D(3,4,6)]", "[D(1,2,3) D(1,2,6)^-1 D(2,5,6)]"),
    ("D(2,4,5)", "[D(1,2,4) D(2,3,4)^-1 D(3,4,5)]", "D(3,4,6)"),
    ("D(2,4,6)", "[D(2,3,4)^-1 y]", "[D(1,2,6)^-1 y]"),
    ("D(2,5,6)", "[D(1,2,6) D(1,3,4) D(4,5,6) D(1,5,6)^-1 D(2,3,4)^-1]", "D(3,5,6)"),
    ("D(3,4,6)", "D(3,5,6)", "[D(1,2,5) D(1,2,6)^-1 D(2,3,4) D(3,4,5)^-1 D(4,5,6)]"),
    ("D(3,5,6)", "[D(1,3,6) D(1,5,6)^-1 D(4,5,6)]", "[D(2,3,5) D(3,4,5)^-1 D(4,5,6)]"),
    ("y", "[D(1,2,6) D(1,3,5) D(1,5,6)^-1 D(4,5,6)]", "[D(1,3,5) D(2,3,4) D(3,4,5)^-1 D(4,5,6)]"),
    ("z", "[D(1,2,3) D(2,3,4)^-1 D(2,4,6) D(3,4,5)]", "[D(1,2,3) D(1,2,6)^-1 D(1,5,6) D(2,4,6)]"),
]

# Relations of Gr(3,6) whose σ_1 images are worked out by hand.
GR36_RELATIONS = [
    ("exchange at D(1,2,4)", "exchange", "D(1,2,4)*D(1,3,5)", "q*[D(1,2,5) D(1,3,4)] + [D(1,2,3) D(1,4,5)]"),
    ("exchange at D(1,3,6)", "exchange", "D(1,2,4)*D(1,3,6)", "q^{-1}*D(1,2,3)*D(1,4,6) + q*D(1,2,6)*D(1,3,4)"),
    (
        "4-term Plücker",
        "plucker",
        "D(1,2,4)*D(3,5,6)",
        "q^{-1}*D(1,2,3)*D(4,5,6) + q*D(1,2,5)*D(3,4,6) - q^2*D(1,2,6)*D(3,4,5)",
    ),
]

# The reduced form of the σ_1 image of the 4-term relation.
GR36_FOUR_TERM_REDUCED = (
    "D(1,2,5)*D(1,3,6)*D(4,5,6)",
    "D(1,2,3)*D(4,5,6)*D(1,5,6) + q^2*D(1,2,6)*D(1,4,5)*D(3,5,6) - q^3*D(1,2,6)*D(3,4,5)*D(1,5,6)",
)
