"""Acceptance gate: every criterion at its stated tolerance.

All comparisons are exact (integers and reduced fractions); runtime
limits are asserted against wall-clock time and each criterion prints a
single PASS line with its elapsed time (visible with ``pytest -s``).
"""

import io
import json
import math
import random
import time
from fractions import Fraction

import numpy as np

from psi_lab import cli, harness, structure
from psi_lab.enumeration import all_groups_of_order
from psi_lab.families import (
    Abelian,
    Alt4,
    Alt5,
    Cyclic,
    Dihedral,
    DirectProduct,
    KLEIN,
    Modular,
    Quaternion,
    Semidihedral,
    SemidirectCyclic,
    Sym3,
    build,
    canonical_label,
    spec_order,
)
from psi_lab.kernel import direct_product, semidirect_product, subgroup
from psi_lab.psi import (
    cyclic_lower_bound,
    herzog_bound_f,
    psi,
    psi_cyclic,
    psi_cyclic_oracle,
    psi_prime,
    sylow_ratio,
)
from psi_lab.arith import first_primes, is_prime, prime_divisors

SEED = 20260809


class _Timer:
    def __init__(self, number: int, name: str, limit_s: float):
        self.number, self.name, self.limit = number, name, limit_s

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        if exc_type is None:
            print(
                f"\nACCEPTANCE {self.number} ({self.name}): PASS "
                f"in {elapsed:.2f}s (limit {self.limit:.0f}s)"
            )
            assert elapsed < self.limit, (
                f"criterion {self.number} exceeded its runtime limit: "
                f"{elapsed:.2f}s >= {self.limit:.0f}s"
            )
        else:
            print(f"\nACCEPTANCE {self.number} ({self.name}): FAIL")
        return False


def test_criterion_1_exact_paper_values():
    with _Timer(1, "exact values", 1.0):
        assert psi_prime(build(Sym3())) == Fraction(13, 21)
        assert psi_prime(build(Quaternion(8))) == Fraction(27, 43)
        assert psi_prime(build(KLEIN)) == Fraction(7, 11)
        assert psi_prime(build(Alt5())) == Fraction(211, 1617)
        assert psi_prime(build(Alt4())) == Fraction(31, 77)
        assert herzog_bound_f(2) == Fraction(7, 11)
        assert psi(build(Cyclic(8))) == 43


def test_criterion_2_cyclic_oracle_equivalence():
    with _Timer(2, "cyclic psi three ways, n <= 512", 30.0):
        for n in range(1, 513):
            closed = psi_cyclic(n)
            assert closed == psi_cyclic_oracle(n), n
            assert closed == psi(build(Cyclic(n))), n


def _coprime_pair_pool():
    specs = [Cyclic(n) for n in range(2, 50)]
    specs += [Cyclic(n) for n in (64, 81, 100, 125, 128, 243, 256, 343, 512)]
    specs += [Dihedral(n) for n in (6, 8, 10, 12, 14, 16, 20, 26, 30)]
    specs += [Quaternion(8), Quaternion(16), Quaternion(32)]
    specs += [Semidihedral(16), Modular(16)]
    specs += [Sym3(), Alt4(), Alt5(), KLEIN, Abelian((4, 2)), Abelian((3, 3)),
              Abelian((2, 2, 2))]
    specs += [SemidirectCyclic(7, Cyclic(3), 2), SemidirectCyclic(3, Cyclic(4), 2),
              SemidirectCyclic(5, Cyclic(4), 2)]
    pairs = []
    for i, a in enumerate(specs):
        for b in specs[i + 1 :]:
            na, nb = spec_order(a), spec_order(b)
            if math.gcd(na, nb) == 1 and na * nb <= 2048:
                pairs.append((a, b))
    return pairs


def test_criterion_3_multiplicativity_randomized():
    with _Timer(3, "multiplicativity on 200 coprime pairs", 120.0):
        rng = random.Random(SEED)
        pairs = _coprime_pair_pool()
        assert len(pairs) >= 200
        sample = rng.sample(pairs, 200)
        built: dict[str, object] = {}

        def realize(spec):
            label = canonical_label(spec)
            if label not in built:
                built[label] = build(spec)
            return built[label]

        for sa, sb in sample:
            a, b = realize(sa), realize(sb)
            product = direct_product(a, b)
            assert psi(product) == psi(a) * psi(b), (a.label, b.label)


def _lemma_check_on_split(G, p_order, h_order):
    P = subgroup(G, [i * h_order for i in range(p_order)])
    H = subgroup(G, range(h_order))
    return harness.check_lemma_identities(G, P, H)


def test_criterion_4_split_identities():
    with _Timer(4, "split identities, named + 20 randomized", 60.0):
        for spec, p in (
            (Sym3(), 3),
            (Dihedral(10), 5),
            (SemidirectCyclic(7, Cyclic(3), 2), 7),
            (DirectProduct((Sym3(), Cyclic(5))), 5),
        ):
            g = build(spec)
            P = structure.sylow_subgroup(g, p)
            H = harness.find_complement(g, P)
            assert H is not None, g.label
            report = harness.check_lemma_identities(g, P, H)
            assert report.outcome == harness.HOLDS, g.label

        rng = random.Random(SEED)
        kernels = [3, 5, 7, 9, 11, 13, 25, 27, 49]
        complements = [
            Cyclic(2), Cyclic(3), Cyclic(4), Cyclic(6), Cyclic(8),
            KLEIN, Sym3(), Abelian((4, 2)), Quaternion(8), Cyclic(12),
        ]
        done = 0
        while done < 20:
            m = rng.choice(kernels)
            h_spec = rng.choice(complements)
            p = prime_divisors(m)[0]
            if spec_order(h_spec) % p == 0:
                continue
            P = build(Cyclic(m))
            H = build(h_spec)
            aut, perms = structure.automorphism_group(P)
            hom = rng.choice(structure.all_homomorphisms(H, aut))
            G = semidirect_product(P, H, [perms[i] for i in hom])
            report = _lemma_check_on_split(G, m, H.order)
            assert report.outcome == harness.HOLDS, G.label
            # product bound equality must hold exactly when P is central,
            # i.e. when the sampled action is trivial
            trivial = all(i == aut.identity for i in hom)
            fact = report.witnesses[0].facts[0]
            assert ("equality (kernel central)" in fact) == trivial
            done += 1


def test_criterion_5_exhaustive_main_theorem_scan():
    with _Timer(5, "exhaustive scan, orders 1..16", 300.0):
        counts = (1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14)
        equality_hits = []
        top_ratios = set()
        for n in range(1, 17):
            catalog = all_groups_of_order(n)
            assert len(catalog.groups) == counts[n - 1], f"order {n}"
            for g in catalog.groups:
                pp = psi_prime(g)
                if pp > Fraction(13, 21):
                    assert structure.is_nilpotent(g), g.label
                    top_ratios.add(pp)
                elif pp == Fraction(13, 21):
                    cert = structure.isomorphic(g, build(Sym3()))
                    assert cert.exists, g.label
                    equality_hits.append((n, g.label, cert.mapping))
        assert len(equality_hits) == 1
        assert equality_hits[0][0] == 6
        assert top_ratios == {Fraction(27, 43), Fraction(7, 11), Fraction(1)}


def test_criterion_6_family_formula_regression():
    with _Timer(6, "family formula regression", 10.0):
        rows = harness.family_ratio_table(6)
        by_key = {(r.kind, r.n1): r for r in rows}
        for kind in ("dihedral", "quaternion", "semidihedral"):
            for n1 in range(3, 7):
                if (kind, n1) not in by_key:
                    continue
                row = by_key[(kind, n1)]
                assert row.formula_matches, (kind, n1)
        for n1 in (4, 5, 6):
            modular = by_key[("modular", n1)]
            twin = psi(build(Abelian((2 ** (n1 - 1), 2))))
            assert modular.table_psi == twin
            assert not modular.formula_matches  # discrepancy stays flagged
        assert by_key[("modular", 4)].table_psi == 87


def test_criterion_7_bound_sweeps():
    with _Timer(7, "bound sweeps", 30.0):
        for n in range(2, 10001):
            assert psi_cyclic(n) >= cyclic_lower_bound(n), n
        bound = Fraction(3, 7)
        for p in range(3, 98, 2):
            if not is_prime(p):
                continue
            for n in range(1, 9):
                r = sylow_ratio(p, n)
                assert r <= bound
                assert (r == bound) == (p == 3 and n == 1)
        primes = first_primes(20)
        values = [herzog_bound_f(q) for q in primes]
        for q, v in zip(primes, values):
            assert v < Fraction(1, q - 1)
        for a, b in zip(values, values[1:]):
            assert a > b


def test_criterion_8_conjecture_evidence():
    with _Timer(8, "supersolvability conjecture evidence", 300.0):
        threshold = Fraction(31, 77)
        for n in range(1, 17):
            for g in all_groups_of_order(n).groups:
                pp = psi_prime(g)
                if pp > threshold:
                    assert structure.is_supersolvable(g), g.label
        for g in harness.catalog_groups():
            pp = psi_prime(g)
            if pp > threshold and g.order <= structure.SUBGROUP_ENUMERATION_CAP:
                assert structure.is_supersolvable(g), g.label
        for spec in (Alt4(), DirectProduct((Alt4(), Cyclic(5)))):
            g = build(spec)
            assert psi_prime(g) == threshold, g.label
            assert not structure.is_supersolvable(g), g.label


def test_criterion_9_cli_contract(tmp_path, capsys):
    with _Timer(9, "CLI contract", 300.0):
        code = cli.main(
            ["verify", "main-theorem", "--max-order", "16", "--exhaustive",
             "--json"]
        )
        out = capsys.readouterr().out
        assert code == 0
        payload = json.loads(out)
        assert payload["schema"] == cli.SCHEMA_NAME
        for record in payload["records"]:
            cli.validate_record(record)
        eq = [r for r in payload["records"] if r["outcome"] == "equality-boundary"]
        assert len(eq) == 1 and eq[0]["order"] == 6
        assert eq[0]["witnesses"][0]["isomorphism"] is not None

        path = tmp_path / "catalog.bin"
        assert cli.main(
            ["export-catalog", "--max-order", "16", "--output", str(path)]
        ) == 0
        capsys.readouterr()
        with open(path, "rb") as fh:
            loaded = cli.read_catalog(fh)
        originals = [
            g for n in range(1, 17) for g in all_groups_of_order(n).groups
        ]
        assert len(loaded) == len(originals)
        for a, b in zip(originals, loaded):
            assert np.array_equal(a.table, b.table)
        buf = io.BytesIO()
        cli.write_catalog(loaded, buf)
        assert buf.getvalue() == path.read_bytes()
