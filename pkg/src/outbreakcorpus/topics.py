"""Topic modeling by collapsed Gibbs sampling.

Small-corpus implementation tuned for reproducibility: a fixed seed fixes
the token order (documents as given, each bag expanded in sorted-word
order), the initial assignments, and one uniform draw per resample, so two
runs with identical inputs produce identical count matrices.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import CorpusError


@dataclass(frozen=True)
class TopicModel:
    k: int
    vocabulary: Tuple[str, ...]
    doc_ids: Tuple[str, ...]
    word_topic: Tuple[Tuple[int, ...], ...]  # [k][word] counts
    doc_topic: Tuple[Tuple[int, ...], ...]  # [doc][k] counts
    topic_totals: Tuple[int, ...]
    alpha: float
    beta: float
    seed: int
    iterations: int

    def topic_distribution(self, topic: int) -> Tuple[float, ...]:
        """Smoothed word distribution for one topic; sums to 1."""
        v = len(self.vocabulary)
        denom = self.topic_totals[topic] + v * self.beta
        return tuple((count + self.beta) / denom
                     for count in self.word_topic[topic])


def _expand(bags: Sequence[Tuple[str, Counter]], vocabulary: Tuple[str, ...]):
    word_ids = {w: i for i, w in enumerate(vocabulary)}
    docs = []
    for _, bag in bags:
        tokens: List[int] = []
        for word in sorted(bag):
            tokens.extend([word_ids[word]] * bag[word])
        docs.append(tokens)
    return docs


def lda_train(bags: Sequence[Tuple[str, Counter]], k: int, iterations: int,
              alpha: Optional[float] = None, beta: float = 0.01,
              seed: int = 0) -> TopicModel:
    """Collapsed Gibbs sampling over bag-of-words documents.

    Resampling probability for topic t:
        (n_dt + alpha) * (n_tw + beta) / (n_t + V * beta)
    with the current token's own counts decremented. alpha defaults to 50/k.
    """
    if k < 2:
        raise CorpusError(f"need at least 2 topics, got {k}")
    if not bags:
        raise CorpusError("no documents to train on")
    if alpha is None:
        alpha = 50.0 / k
    vocabulary = tuple(sorted({w for _, bag in bags for w in bag}))
    v = len(vocabulary)
    # more topics than tokens can never all be populated
    total_tokens = sum(sum(bag.values()) for _, bag in bags)
    if k > total_tokens:
        raise CorpusError(f"{k} topics exceed corpus size {total_tokens}")

    docs = _expand(bags, vocabulary)
    rng = random.Random(seed)

    n_tw = [[0] * v for _ in range(k)]
    n_dt = [[0] * k for _ in range(len(docs))]
    n_t = [0] * k
    assignments = []
    for d, tokens in enumerate(docs):
        z_doc = []
        for w in tokens:
            t = rng.randrange(k)
            z_doc.append(t)
            n_tw[t][w] += 1
            n_dt[d][t] += 1
            n_t[t] += 1
        assignments.append(z_doc)

    v_beta = v * beta
    for _ in range(iterations):
        for d, tokens in enumerate(docs):
            doc_counts = n_dt[d]
            z_doc = assignments[d]
            for i, w in enumerate(tokens):
                t = z_doc[i]
                n_tw[t][w] -= 1
                doc_counts[t] -= 1
                n_t[t] -= 1
                total = 0.0
                weights = []
                for tt in range(k):
                    p = (doc_counts[tt] + alpha) * (n_tw[tt][w] + beta) / (n_t[tt] + v_beta)
                    total += p
                    weights.append(total)
                pick = rng.random() * total
                t = 0
                while weights[t] < pick:
                    t += 1
                z_doc[i] = t
                n_tw[t][w] += 1
                doc_counts[t] += 1
                n_t[t] += 1

    return TopicModel(
        k=k,
        vocabulary=vocabulary,
        doc_ids=tuple(doc_id for doc_id, _ in bags),
        word_topic=tuple(tuple(row) for row in n_tw),
        doc_topic=tuple(tuple(row) for row in n_dt),
        topic_totals=tuple(n_t),
        alpha=alpha,
        beta=beta,
        seed=seed,
        iterations=iterations,
    )


def top_words(model: TopicModel, topic: int, n: int) -> List[str]:
    """The n highest-count words of a topic; ties break alphabetically."""
    counts = model.word_topic[topic]
    ranked = sorted(zip(model.vocabulary, counts), key=lambda wc: (-wc[1], wc[0]))
    return [word for word, _ in ranked[:n]]
