"""Deterministic random gentle pairs and skew-gentle triples.

Instances are produced constructively: arrows are inserted under the
per-vertex in/out budget of two, then the composable pairs at each vertex
are assigned into relation or non-relation slots respecting the gentle
at-most-one constraints, and finally the finite-dimensionality axiom is
certified by the engine, with rejection and retry on failure.

The PRNG is SplitMix64 (Steele-Lea-Flood), fixed here byte for byte so a
(seed, config) pair reproduces the corpus on any platform.  Streams are
split by hashing a text label into the seed (FNV-1a 64), one independent
stream per instance and phase.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .gentle import SkewGentleTriple, check_gentle, check_skew_gentle
from .quiver import QuiverSpec, RelationExpr, serialize

_MASK = (1 << 64) - 1


def _mix64(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK
    return z ^ (z >> 31)


def fnv1a64(text: str) -> int:
    h = 0xCBF29CE484222325
    for b in text.encode("utf-8"):
        h = (h ^ b) * 0x100000001B3 & _MASK
    return h


class SplitMix64:
    """SplitMix64 with Fraction-exact Bernoulli and rejection sampling."""

    GAMMA = 0x9E3779B97F4A7C15

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + self.GAMMA) & _MASK
        return _mix64(self.state)

    def split(self, label: str) -> "SplitMix64":
        return SplitMix64(_mix64(self.state ^ fnv1a64(label)))

    def randbelow(self, n: int) -> int:
        if n <= 0:
            raise ValueError("randbelow needs n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.randbelow(hi - lo + 1)

    def bernoulli(self, p: Fraction) -> bool:
        # next < p * 2^64, compared in exact integer arithmetic
        return self.next_u64() * p.denominator < p.numerator << 64

    def weighted_index(self, weights) -> int:
        total = sum(weights, Fraction(0))
        if total <= 0:
            raise ValueError("weights must have positive total")
        r = Fraction(self.next_u64(), 1 << 64) * total
        acc = Fraction(0)
        for i, w in enumerate(weights):
            acc += w
            if r < acc:
                return i
        return len(weights) - 1


def stream_for(seed: int, label: str) -> SplitMix64:
    return SplitMix64(_mix64(seed ^ fnv1a64(label)))


@dataclass(frozen=True)
class GenConfig:
    seed: int = 20260810
    n_vertices: tuple = (2, 7)
    n_arrows: tuple = (2, 8)
    relation_density: Fraction = Fraction(7, 10)
    special_density: Fraction = Fraction(1, 2)
    count: int = 500
    retry_budget: int = 200

    def __post_init__(self):
        if self.n_vertices[0] > self.n_vertices[1] or self.n_arrows[0] > self.n_arrows[1]:
            raise ValueError("empty range in GenConfig")
        for d in (self.relation_density, self.special_density):
            if not 0 <= d <= 1:
                raise ValueError("densities must lie in [0, 1]")

    def to_json(self):
        return {
            "seed": self.seed,
            "n_vertices": list(self.n_vertices),
            "n_arrows": list(self.n_arrows),
            "relation_density": str(self.relation_density),
            "special_density": str(self.special_density),
            "count": self.count,
        }


class GenerationExhausted(RuntimeError):
    pass


def _valid_relation_subsets(pairs, ins, outs):
    """Subsets of composable pairs at a vertex obeying the gentle slots."""
    out = []
    for mask in range(1 << len(pairs)):
        chosen = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        ok = True
        for a in ins:
            row = [p for p in pairs if p[0] == a]
            inside = sum(1 for p in row if p in chosen)
            if inside > 1 or len(row) - inside > 1:
                ok = False
                break
        if ok:
            for b in outs:
                col = [p for p in pairs if p[1] == b]
                inside = sum(1 for p in col if p in chosen)
                if inside > 1 or len(col) - inside > 1:
                    ok = False
                    break
        if ok:
            out.append(chosen)
    return out


def _attempt_gentle(rng: SplitMix64, cfg: GenConfig):
    nv = rng.randint(*cfg.n_vertices)
    vertices = tuple(str(i + 1) for i in range(nv))
    na = rng.randint(*cfg.n_arrows)
    out_budget = {v: 0 for v in vertices}
    in_budget = {v: 0 for v in vertices}
    arrows = []
    for k in range(na):
        for _ in range(20):
            s = vertices[rng.randbelow(nv)]
            t = vertices[rng.randbelow(nv)]
            if out_budget[s] < 2 and in_budget[t] < 2:
                arrows.append((f"a{k}", s, t))
                out_budget[s] += 1
                in_budget[t] += 1
                break
    relations = []
    one = Fraction(1)
    for v in vertices:
        ins = [a for a, _, t in arrows if t == v]
        outs = [a for a, s, _ in arrows if s == v]
        pairs = [(a, b) for a in ins for b in outs]
        if not pairs:
            continue
        subsets = _valid_relation_subsets(pairs, ins, outs)
        p, q = cfg.relation_density, 1 - cfg.relation_density
        weights = [p ** len(S) * q ** (len(pairs) - len(S)) for S in subsets]
        if all(w == 0 for w in weights):
            weights = [Fraction(1)] * len(subsets)
        chosen = subsets[rng.weighted_index(weights)]
        for a, b in chosen:
            relations.append(RelationExpr(((one, (a, b)),)))
    return QuiverSpec(vertices, tuple(arrows), tuple(relations), ())


def generate_gentle(config: GenConfig):
    """Deterministic stream of gentle pairs (validated, incl. axiom 4)."""
    for i in range(config.count):
        rng = stream_for(config.seed, f"gentle/{i}")
        for _ in range(config.retry_budget):
            spec = _attempt_gentle(rng, config)
            if check_gentle(spec).is_gentle:
                yield spec
                break
        else:
            raise GenerationExhausted(
                f"instance {i}: retry budget exhausted (config too dense)"
            )


def admissible_special_vertices(spec: QuiverSpec):
    """Vertices whose lone special loop keeps the augmented pair gentle."""
    out = []
    for v in spec.vertices:
        probe = QuiverSpec(spec.vertices, spec.arrows, spec.relations, (v,))
        if isinstance(check_skew_gentle(probe), SkewGentleTriple):
            out.append(v)
    return out


def attach_special(spec: QuiverSpec, config: GenConfig, instance_label: str = "0"):
    """Stream of validated triples over a gentle pair: Sp = {} first, then
    a density-sampled admissible subset (re-validated jointly, since
    separately admissible loops can interact)."""
    rng = stream_for(config.seed, f"special/{instance_label}")
    triples = []
    empty = check_skew_gentle(spec)
    if not isinstance(empty, SkewGentleTriple):
        raise ValueError("attach_special requires a gentle pair")
    triples.append(empty)
    # only vertices meeting an arrow: an isolated special vertex just adds
    # a semisimple k x k factor, which drowns the corpus in degenerate cases
    touched = {s for _, s, _ in spec.arrows} | {t for _, _, t in spec.arrows}
    cands = [v for v in admissible_special_vertices(spec) if v in touched]
    chosen = [v for v in cands if rng.bernoulli(config.special_density)]
    while chosen:
        probe = QuiverSpec(spec.vertices, spec.arrows, spec.relations, tuple(chosen))
        res = check_skew_gentle(probe)
        if isinstance(res, SkewGentleTriple):
            triples.append(res)
            break
        chosen.pop(rng.randbelow(len(chosen)))
    return triples


def corpus_triples(config: GenConfig):
    """One validated triple per instance (the density-sampled one)."""
    for i, spec in enumerate(generate_gentle(config)):
        stream = attach_special(spec, config, str(i))
        yield stream[-1]


def write_corpus(config: GenConfig, outdir) -> dict:
    """Write DSL files plus a manifest; byte-identical per (seed, config)."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    entries = []
    for i, triple in enumerate(corpus_triples(config)):
        spec = QuiverSpec(
            triple.base.vertices,
            triple.base.arrows,
            triple.base.relations,
            triple.special_vertices,
        )
        text = serialize(spec)
        name = f"instance_{i:04d}.quiver"
        (outdir / name).write_text(text)
        entries.append(
            {
                "id": i,
                "file": name,
                "sha256": hashlib.sha256(text.encode()).hexdigest(),
                "n_vertices": len(spec.vertices),
                "n_arrows": len(spec.arrows),
                "n_relations": len(spec.relations),
                "n_special": len(spec.special),
            }
        )
    manifest = {
        "schema": "skewgentle-corpus/1",
        "config": config.to_json(),
        "instances": entries,
    }
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=1))
    return manifest
