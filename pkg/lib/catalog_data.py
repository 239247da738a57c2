# Built-in knot models in the knot-file format.
# Boundary rows list the image of each source generator.

UNKNOT = {
    "name": "unknot",
    "ring": "BN",
    "degrees": [0],
    "ranks": {"0": 1},
    "boundaries": {},
    "cycle": {"degree": 0, "vector": ["1"], "genus": 0, "dplus": 0, "direction": "unknot-to-K"},
    "companion": {"degree": 0, "vector": ["1"], "genus": 0, "dplus": 0, "direction": "K-to-unknot"},
    "signature": 0,
    "expected_ideal": "1",
    "provenance": ["trivial rank-one complex, generator bounded by a disk"],
    "conjecture": False
}

TREFOIL = {
    "name": "trefoil",
    "ring": "BN",
    "degrees": [0, 1],
    "ranks": {"0": 1, "1": 2},
    "boundaries": {"1": [["L", "P"]]},
    "cycle": {"degree": 1, "vector": ["0", "1"], "genus": 0, "dplus": 1, "direction": "unknot-to-K"},
    "companion": {"degree": 1, "vector": ["P", "L"], "genus": 0, "dplus": 0, "direction": "K-to-unknot"},
    "signature": -2,
    "expected_ideal": "L, P",
    "provenance": [
        "boundary (L, P) from the cone of the skein map X = (L+P, P)",
        "basis e1 = b+, e2 = b+ + b-",
        "iota = e2 from a disk with one positive double point"
    ],
    "conjecture": False
}

TREFOIL_LEFT = {
    "name": "trefoil_left",
    "ring": "BN",
    "degrees": [0, 1],
    "ranks": {"0": 2, "1": 1},
    "boundaries": {"1": [["L"], ["P"]]},
    "cycle": {"degree": 0, "vector": ["0", "1"], "genus": 0, "dplus": 1, "direction": "K-to-unknot"},
    "companion": {"degree": 0, "vector": ["P", "L"], "genus": 0, "dplus": 0, "direction": "unknot-to-K"},
    "signature": 2,
    "expected_ideal": "1",
    "provenance": [
        "dual of the trefoil data, matrix entries (L, P)",
        "cobordism map e2 -> generator, e1 -> 0, image ideal <L>",
        "companion P*e1 + L*e2 spans the kernel"
    ],
    "conjecture": False
}

EXAMPLE_E = {
    "name": "exampleE",
    "ring": "FULL",
    "degrees": [0, 1],
    "ranks": {"0": 1, "1": 2},
    "boundaries": {"1": [["V^3", "P"]]},
    "cycle": {"degree": 1, "vector": ["1", "0"], "genus": 1, "dplus": 0, "direction": "unknot-to-K"},
    "signature": None,
    "expected_ideal": "P, V^3",
    "provenance": [
        "hypothetical boundary (V^3, P) over the full ring",
        "homology generated by the class of e1 from a genus-one surface"
    ],
    "conjecture": False
}

HOPF_SKEIN_DATA = {
    "name": "hopf_skein_data",
    "ring": "BN",
    "hopf": {"ring": "BN", "degrees": [0], "ranks": {"0": 2}, "boundaries": {}},
    "unknot": {"ring": "BN", "degrees": [0], "ranks": {"0": 1}, "boundaries": {}},
    "map": [["L+P", "P"]],
    "basis": [["1", "1"], ["0", "1"]],
    "cycle": ["1", "1"],
    "cocycle": ["P", "P+L"],
    "actions": {
        "S_g": ["0", "1"],
        "S_delta": ["1", "1"]
    },
    "expected_actions": {
        "S_g": "P",
        "S_delta": "L"
    },
    "provenance": [
        "Hopf complex S^2 with zero differential, generators (b+, b-)",
        "skein map X = (L+P, P) from the unknot",
        "S_g: b+ -> 0, b- -> a and S_delta: b+ -> a, b- -> a"
    ],
    "conjecture": False
}

K34_CONJECTURAL = {
    "name": "k34_conjectural",
    "ring": "BN",
    "expected_ideal": "L^3, L^2*P, L*P^2, P^3, (1+T^-2)*P^2 + L^2",
    "provenance": ["conjectured ideal for the (3,4) torus knot with Y = (1+T^-2) P^2 + L^2"],
    "conjecture": True
}

HEEGAARD_K34 = {
    "name": "heegaard_k34",
    "ring": "BN",
    "generators": ["u^3", "u^2*w", "u*w^2", "w^3", "u*w"],
    "provenance": ["Heegaard-side ideal for the (3,4) torus knot, u -> L and w -> P"],
    "conjecture": True
}
