"""Deterministic synthetic corpora with genre-dependent affect profiles.

Each genre profile targets a valence level; its term pool is the set of
lexicon words whose valence mean lies within ±0.1 of that target. Tokens
are drawn from a mixture of the genre pool and a shared background pool
(the whole lexicon), weighted by the profile's bias. Arousal and dominance
follow whatever the sampled words carry. Generation is fully determined by
the seed.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from typing import Optional, Sequence

from .corpus import Corpus, Document
from .lexicon import AffectLexicon

VALENCE_BAND = 0.1

DEFAULT_START = datetime(2013, 1, 1, tzinfo=timezone.utc)
DEFAULT_SPACING = timedelta(days=1)


@dataclass(frozen=True, slots=True)
class GenreProfile:
    """Recipe for one genre's documents.

    ``bias`` is the probability that a token comes from the genre's own
    valence-band pool rather than the shared pool. ``target`` is the
    (valence, arousal, dominance) triple; only valence drives pool
    selection. ``channel`` defaults to the label.
    """

    label: str
    document_count: int
    bias: float
    target: tuple[float, float, float]
    token_range: tuple[int, int]
    channel: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("profile label is empty")
        if self.document_count < 1:
            raise ValueError(f"document_count must be >= 1, got {self.document_count}")
        if not 0.0 <= self.bias <= 1.0:
            raise ValueError(f"bias {self.bias!r} is outside [0, 1]")
        if len(self.target) != 3 or not all(0.0 <= t <= 1.0 for t in self.target):
            raise ValueError(f"target {self.target!r} must be three values in [0, 1]")
        low, high = self.token_range
        if low < 1 or high < low:
            raise ValueError(f"token_range {self.token_range!r} is invalid")


def generate(
    profiles: Sequence[GenreProfile],
    lexicon: AffectLexicon,
    seed: int,
    start: datetime = DEFAULT_START,
    spacing: timedelta = DEFAULT_SPACING,
) -> Corpus:
    """Generate a labeled corpus, one batch of documents per profile.

    Documents receive evenly spaced timestamps (``start + n * spacing`` in
    generation order) and ids of the form ``<label>-<n>``. Raises
    ``ValueError`` when a profile's valence band contains no lexicon word,
    naming the profile.
    """
    if not profiles:
        raise ValueError("no profiles given")
    if len(lexicon) == 0:
        raise ValueError("empty lexicon")

    shared_pool = lexicon.words()
    pools = []
    for profile in profiles:
        target_valence = profile.target[0]
        pool = [
            word
            for word in shared_pool
            if abs(lexicon.entries[word].valence.mean - target_valence) <= VALENCE_BAND
        ]
        if not pool:
            raise ValueError(
                f"profile {profile.label!r}: no lexicon word has valence within "
                f"±{VALENCE_BAND} of target {target_valence}"
            )
        pools.append(pool)

    rng = random.Random(seed)
    documents = []
    serial = 0
    for profile, pool in zip(profiles, pools):
        for _ in range(profile.document_count):
            token_count = rng.randint(*profile.token_range)
            counts: Counter[str] = Counter()
            for _ in range(token_count):
                source = pool if rng.random() < profile.bias else shared_pool
                counts[rng.choice(source)] += 1
            documents.append(
                Document(
                    id=f"{profile.label}-{serial:05d}",
                    channel=profile.channel or profile.label,
                    term_counts=dict(counts),
                    total_tokens=token_count,
                    genre=profile.label,
                    timestamp=start + serial * spacing,
                )
            )
            serial += 1
    return Corpus(tuple(documents))
