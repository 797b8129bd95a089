"""Writes the bundled corpus of group definition files.

Family members (2-groups and matrix groups) come from `indres families --emit`;
the rest are built here from explicit permutations. Every file records the
order computed by closure, which the loader checks again.
"""
import itertools
import json
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "corpus"
BIN = ROOT / "target" / "debug" / "indres"


def compose(a, b):
    # apply a, then b
    return tuple(b[i] for i in a)


def closure(gens):
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = compose(g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return len(seen)


def cycles(p):
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(j + 1)
            j = p[j]
        out.append("(" + ",".join(map(str, c)) + ")")
    return "".join(out) or "()"


def from_cycles(n, text):
    p = list(range(n))
    for cyc in text.strip("()").split(")("):
        if not cyc:
            continue
        pts = [int(x) - 1 for x in cyc.split(",")]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            p[a] = b
    return tuple(p)


def write(fname, name, gens, tags):
    order = closure(gens)
    assert order <= 720, (name, order)
    data = {
        "name": name,
        "degree": len(gens[0]),
        "cycles": [cycles(g) for g in gens],
        "tags": sorted(tags),
        "order": order,
    }
    (OUT / f"{fname}.json").write_text(json.dumps(data, indent=2) + "\n")
    print(f"{fname:<16} {name:<24} order {order}")


def cyc(n, *gens):
    return [from_cycles(n, g) for g in gens]


def affine_prime(p, a):
    """x -> x+1, x -> a x on Z/p."""
    return [tuple((i + 1) % p for i in range(p)), tuple((a * i) % p for i in range(p))]


def gf_mul_table(p, modulus):
    """Multiplication on F_{p^k} with elements as base-p digit vectors."""
    k = len(modulus) - 1
    q = p ** k

    def digits(x):
        return [(x // p ** i) % p for i in range(k)]

    def number(v):
        return sum(d * p ** i for i, d in enumerate(v))

    def mul(a, b):
        da, db = digits(a), digits(b)
        prod = [0] * (2 * k)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        for d in range(2 * k - 1, k - 1, -1):
            c = prod[d]
            if c:
                for i, m in enumerate(modulus):
                    prod[d - k + i] = (prod[d - k + i] - c * m) % p
        return number(prod[:k])

    def add(a, b):
        return number([(x + y) % p for x, y in zip(digits(a), digits(b))])

    return q, add, mul


def affine_field(p, modulus, extra=()):
    """AGL(1, p^k) on the field elements, plus optional extra maps."""
    q, add, mul = gf_mul_table(p, modulus)
    prim = next(g for g in range(2, q) if closure([tuple(mul(g, x) for x in range(q))]) == q - 1)
    gens = [tuple(add(x, 1) for x in range(q)), tuple(mul(prim, x) for x in range(q))]
    for f in extra:
        gens.append(tuple(f(x, add, mul) for x in range(q)))
    return gens


def linear_on_plane(p, mats):
    """Affine maps v -> v M + t on F_p^2 (row vectors), t ranging over a basis."""
    pts = [(a, b) for a in range(p) for b in range(p)]
    idx = {v: i for i, v in enumerate(pts)}
    gens = [
        tuple(idx[((a + 1) % p, b)] for a, b in pts),
        tuple(idx[(a, (b + 1) % p)] for a, b in pts),
    ]
    for m in mats:
        gens.append(tuple(idx[((a * m[0] + b * m[2]) % p, (a * m[1] + b * m[3]) % p)] for a, b in pts))
    return gens


def direct(g, h):
    n, m = len(g[0]), len(h[0])
    left = [tuple(list(x) + list(range(n, n + m))) for x in g]
    right = [tuple(list(range(n)) + [n + i for i in y]) for y in h]
    return left + right


def symmetric(n):
    return cyc(n, "(" + ",".join(map(str, range(1, n + 1))) + ")", "(1,2)")


def alternating(n):
    return [from_cycles(n, f"(1,2,{k})") for k in range(3, n + 1)]


def cyclic(n):
    return [tuple((i + 1) % n for i in range(n))]


def family(kind, param, fname, name, tags):
    with tempfile.TemporaryDirectory() as d:
        path = Path(d) / "g.json"
        flag = "--q" if kind in ("sl2", "gl2", "psl2") else "--n"
        subprocess.run([str(BIN), "families", "--family", kind, flag, str(param), "--emit", str(path)],
                       check=False, stdout=subprocess.DEVNULL)
        data = json.loads(path.read_text())
    n = data["degree"]
    gens = [from_cycles(n, c) for c in data["cycles"]]
    write(fname, name, gens, tags)


def main():
    OUT.mkdir(exist_ok=True)
    for f in OUT.glob("*.json"):
        f.unlink()
    S, A, F, P = ["solvable"], ["solvable"], ["solvable", "frobenius"], ["solvable", "p-group"]
    for n in range(2, 7):
        write(f"s{n}", f"S{n}", symmetric(n), S if n <= 4 else ["nonsolvable"])
    for n in range(3, 7):
        write(f"a{n}", f"A{n}", alternating(n), A if n <= 4 else ["nonsolvable", "simple"])
    for n in (6, 8, 12):
        write(f"c{n}", f"C{n}", cyclic(n), S + ["abelian"])
    write("v4", "C2xC2", direct(cyclic(2), cyclic(2)), S + ["abelian", "p-group"])
    write("c2xc2xc2", "C2xC2xC2", direct(direct(cyclic(2), cyclic(2)), cyclic(2)), S + ["abelian", "p-group"])
    write("c3xc3", "C3xC3", direct(cyclic(3), cyclic(3)), S + ["abelian", "p-group"])
    for n in (2, 3, 4, 5):
        family("dihedral", n, f"d{2 ** (n + 1)}", f"D{2 ** (n + 1)}", P)
    for m in (5, 6, 10):
        write(f"d{2 * m}", f"D{2 * m}", [tuple((i + 1) % m for i in range(m)), tuple((-i) % m for i in range(m))], S)
    for n in (2, 3, 4):
        family("quaternion", n, f"q{2 ** (n + 1)}", f"Q{2 ** (n + 1)}", P)
    for n in (3, 4):
        family("semidihedral", n, f"sd{2 ** (n + 1)}", f"SD{2 ** (n + 1)}", P)
    family("wreath", 2, "c4wrc2", "C4wrC2", P)
    family("wreath", 3, "c8wrc2", "C8wrC2", P)
    write("heis27", "3^(1+2)", [tuple(((i // 3 + 1) % 3) * 3 + i % 3 for i in range(9)),
                                 tuple((i // 3) * 3 + (i % 3 + i // 3) % 3 for i in range(9))], P)
    family("sl2", 3, "sl2_3", "SL(2,3)", S)
    family("gl2", 3, "gl2_3", "GL(2,3)", S)
    family("sl2", 5, "sl2_5", "SL(2,5)", ["nonsolvable"])
    family("sl2", 7, "sl2_7", "SL(2,7)", ["nonsolvable"])
    family("psl2", 7, "psl2_7", "PSL(2,7)", ["nonsolvable", "simple"])
    write("f20", "F20=AGL(1,5)", affine_prime(5, 2), F)
    write("f21", "F21", affine_prime(7, 2), F)
    write("f42", "F42=AGL(1,7)", affine_prime(7, 3), F)
    write("f39", "F39", affine_prime(13, 3), F)
    write("f55", "F55", affine_prime(11, 3), F)
    write("f57", "F57", affine_prime(19, 7), F)
    write("f56", "F56=AGL(1,8)", affine_field(2, [1, 1, 0, 1]), F)
    write("f72", "F72=AGL(1,9)", affine_field(3, [1, 0, 1]), F)
    write("f72q8", "C3^2:Q8", linear_on_plane(3, [(0, 1, 2, 0), (1, 1, 1, 2)]), F)
    write("agaml18", "AGammaL(1,8)", affine_field(2, [1, 1, 0, 1], [lambda x, add, mul: mul(x, x)]), S)
    write("asl23", "ASL(2,3)", linear_on_plane(3, [(1, 1, 0, 1), (1, 0, 1, 1)]), S)
    write("dic12", "C3:C4", cyc(7, "(1,2,3)", "(2,3)(4,5,6,7)"), S)
    write("s3xs3", "S3xS3", direct(symmetric(3), symmetric(3)), S)
    write("s3xc3", "S3xC3", direct(symmetric(3), cyclic(3)), S)
    write("s4xc2", "S4xC2", direct(symmetric(4), cyclic(2)), S)
    write("a4xc3", "A4xC3", direct(alternating(4), cyclic(3)), S)
    write("a5xc2", "A5xC2", direct(alternating(5), cyclic(2)), ["nonsolvable"])
    print(len(list(OUT.glob("*.json"))), "files", file=sys.stderr)


if __name__ == "__main__":
    main()
