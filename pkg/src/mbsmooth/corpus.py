"""Case files, vector lexicons and unknown-word feature extraction.

Case file: one case per line, feature tokens followed by the class token,
separated by whitespace (default) or a given delimiter. Blank lines are
skipped.

Vector lexicon: ``token v1 ... vd`` per line.

Tagged corpus: one sentence per line, tokens written ``word/TAG``.
"""

from __future__ import annotations

import io
import logging
import os
from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping, Sequence

import numpy as np

from .errors import DimensionMismatch, EmptyFile, InvalidTemplate, MissingToken, ParseError, RaggedRow
from .instances import Instance, as_vector

log = logging.getLogger(__name__)

BOUNDARY = "_"
UNKNOWN_CLASS = "UNK"

# Penn Treebank open-class tags: nouns, verbs, adjectives, adverbs.
PENN_OPEN_CLASS = frozenset(
    "NN NNS NNP NNPS VB VBD VBG VBN VBP VBZ JJ JJR JJS RB RBR RBS".split()
)


def _split(line: str, delimiter: str | None) -> list[str]:
    if delimiter is None:
        return line.split()
    return [t.strip() for t in line.split(delimiter)]


def _open_text(source) -> IO[str]:
    if hasattr(source, "read"):
        return source
    return open(source, encoding="utf-8")


def parse_cases(
    lines: Iterable[str],
    delimiter: str | None = None,
    arity: int | None = None,
    skip_columns: int = 0,
    source: str | None = None,
) -> list[Instance]:
    """Parse case-file lines into instances.

    ``arity`` is the number of features; if omitted it is taken from the
    first case. ``skip_columns`` drops leading columns such as sentence ids.
    """
    instances = []
    expected = None if arity is None else arity + 1 + skip_columns
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\n").rstrip("\r")
        if not line.strip():
            continue
        tokens = _split(line, delimiter)
        if expected is None:
            expected = len(tokens)
            if expected < 2 + skip_columns:
                raise RaggedRow(lineno, 2 + skip_columns, len(tokens), source)
        if len(tokens) != expected:
            raise RaggedRow(lineno, expected, len(tokens), source)
        tokens = tokens[skip_columns:]
        instances.append(Instance(tuple(tokens[:-1]), tokens[-1]))
    if not instances:
        raise EmptyFile(f"no cases found in {source or 'input'}")
    return instances


def parse_case_file(
    path,
    delimiter: str | None = None,
    arity: int | None = None,
    skip_columns: int = 0,
) -> list[Instance]:
    name = getattr(path, "name", None) or os.fspath(path)
    fh = _open_text(path)
    try:
        return parse_cases(fh, delimiter, arity, skip_columns, source=str(name))
    finally:
        if fh is not path:
            fh.close()


def format_case(instance: Instance, delimiter: str = " ") -> str:
    for v in instance.values:
        if not isinstance(v, str):
            raise TypeError("only symbolic instances can be written to a case file")
    return delimiter.join((*instance.values, instance.label))


def write_case_file(instances: Iterable[Instance], dest, delimiter: str = " ") -> None:
    own = not hasattr(dest, "write")
    fh = open(dest, "w", encoding="utf-8") if own else dest
    try:
        for inst in instances:
            fh.write(format_case(inst, delimiter) + "\n")
    finally:
        if own:
            fh.close()


@dataclass
class VectorLexicon:
    dimension: int
    entries: dict[str, np.ndarray] = field(default_factory=dict)
    duplicates: int = 0

    def __contains__(self, token):
        return token in self.entries

    def __getitem__(self, token):
        return self.entries[token]

    def __len__(self):
        return len(self.entries)

    def get(self, token, default=None):
        return self.entries.get(token, default)


def load_vector_lexicon(path) -> VectorLexicon:
    """Read ``token v1 ... vd`` lines. Later duplicates replace earlier ones."""
    entries: dict[str, np.ndarray] = {}
    dim = None
    duplicates = 0
    fh = _open_text(path)
    try:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            token, raw = parts[0], parts[1:]
            try:
                vec = as_vector([float(x) for x in raw])
            except ValueError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
            if not raw:
                raise ParseError(f"line {lineno}: token {token!r} has no vector")
            if dim is None:
                dim = len(raw)
            elif len(raw) != dim:
                raise DimensionMismatch(
                    f"line {lineno}: token {token!r} has {len(raw)} values, expected {dim}"
                )
            if token in entries:
                duplicates += 1
            entries[token] = vec
    finally:
        if fh is not path:
            fh.close()
    if dim is None:
        raise EmptyFile("vector lexicon is empty")
    if duplicates:
        log.warning("%d duplicate tokens in vector lexicon; last occurrence kept", duplicates)
    return VectorLexicon(dim, entries, duplicates)


def vectorize_cases(
    instances: Iterable[Instance],
    lexicon: VectorLexicon,
    fallback: str = "zero",
    features: Sequence[int] | None = None,
) -> list[Instance]:
    """Replace symbolic feature values by their lexicon vectors.

    Out-of-lexicon tokens become zero vectors (``fallback="zero"``) or raise
    :class:`MissingToken` (``fallback="error"``).
    """
    if fallback not in ("zero", "error"):
        raise ValueError(f"unknown fallback {fallback!r}")
    zero = as_vector(np.zeros(lexicon.dimension))
    out = []
    for inst in instances:
        positions = range(inst.arity) if features is None else features
        values = list(inst.values)
        for i in positions:
            vec = lexicon.get(values[i])
            if vec is None:
                if fallback == "error":
                    raise MissingToken(values[i])
                vec = zero
            values[i] = vec
        out.append(Instance(tuple(values), inst.label))
    return out


class FeatureTemplate:
    """Feature layout for unknown-word cases, e.g. ``"pdass"``.

    ``p`` first letter, ``d`` tag of a preceding word, ``a`` ambiguity class
    of a following word, ``s`` a letter from the end of the word. The n-th
    occurrence of ``d``/``a``/``s`` looks n positions away.
    """

    LETTERS = frozenset("pdas")

    def __init__(self, code: str):
        if not code or set(code) - self.LETTERS:
            raise InvalidTemplate(f"template must be a nonempty string over p,d,a,s; got {code!r}")
        if code.count("p") > 1:
            raise InvalidTemplate("a template has at most one 'p'")
        self.code = code

    def __len__(self):
        return len(self.code)

    def __repr__(self):
        return f"FeatureTemplate({self.code!r})"


def ambiguity_class(tags: Iterable[str] | None) -> str:
    if not tags:
        return UNKNOWN_CLASS
    return "-".join(sorted(set(tags)))


def _suffix_letter(word: str, n: int) -> str:
    # letters come from word[1:], the first letter is the p feature
    stem = word[1:]
    return stem[-n] if n <= len(stem) else BOUNDARY


def _as_sentences(corpus) -> list[list[tuple[str, str]]]:
    corpus = list(corpus)
    if corpus and isinstance(corpus[0], tuple) and len(corpus[0]) == 2 and isinstance(corpus[0][0], str):
        return [corpus]
    return [list(s) for s in corpus]


def extract_unknown_word_cases(
    corpus,
    template: FeatureTemplate | str,
    lexicon_tags: Mapping[str, Iterable[str]],
    open_class: Iterable[str] | None = PENN_OPEN_CLASS,
) -> list[Instance]:
    """Feature patterns for every open-class word in a tagged corpus.

    ``corpus`` is a list of sentences, each a list of ``(word, tag)`` pairs
    (a single flat list is taken as one sentence). Context beyond the
    sentence edges is the boundary symbol ``"_"``. ``open_class=None``
    keeps every word.
    """
    if isinstance(template, str):
        template = FeatureTemplate(template)
    keep = None if open_class is None else frozenset(open_class)
    cases = []
    for sent in _as_sentences(corpus):
        for pos, (word, tag) in enumerate(sent):
            if keep is not None and tag not in keep:
                continue
            values = []
            seen = {"d": 0, "a": 0, "s": 0}
            for letter in template.code:
                if letter == "p":
                    values.append(word[0] if word else BOUNDARY)
                    continue
                seen[letter] += 1
                n = seen[letter]
                if letter == "d":
                    j = pos - n
                    values.append(sent[j][1] if j >= 0 else BOUNDARY)
                elif letter == "a":
                    j = pos + n
                    if j < len(sent):
                        values.append(ambiguity_class(lexicon_tags.get(sent[j][0])))
                    else:
                        values.append(BOUNDARY)
                else:
                    values.append(_suffix_letter(word, n))
            cases.append(Instance(tuple(values), tag))
    return cases


def read_tagged_corpus(source) -> list[list[tuple[str, str]]]:
    """Sentences of ``word/TAG`` tokens, one sentence per line."""
    fh = _open_text(source)
    sentences = []
    try:
        for lineno, line in enumerate(fh, start=1):
            tokens = line.split()
            if not tokens:
                continue
            sent = []
            for tok in tokens:
                word, sep, tag = tok.rpartition("/")
                if not sep or not word or not tag:
                    raise ParseError(f"line {lineno}: token {tok!r} is not word/TAG")
                sent.append((word, tag))
            sentences.append(sent)
    finally:
        if fh is not source:
            fh.close()
    return sentences


def write_tagged_corpus(sentences, dest) -> None:
    own = not hasattr(dest, "write")
    fh = open(dest, "w", encoding="utf-8") if own else dest
    try:
        for sent in sentences:
            fh.write(" ".join(f"{w}/{t}" for w, t in sent) + "\n")
    finally:
        if own:
            fh.close()


def load_tag_lexicon(source) -> dict[str, frozenset[str]]:
    """``word TAG1 TAG2 ...`` per line."""
    fh = _open_text(source)
    lex: dict[str, frozenset[str]] = {}
    try:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            if len(parts) < 2:
                raise ParseError(f"line {lineno}: word {parts[0]!r} has no tags")
            lex[parts[0]] = lex.get(parts[0], frozenset()) | frozenset(parts[1:])
    finally:
        if fh is not source:
            fh.close()
    return lex


def tag_lexicon_from_corpus(sentences) -> dict[str, frozenset[str]]:
    lex: dict[str, set[str]] = {}
    for sent in _as_sentences(sentences):
        for word, tag in sent:
            lex.setdefault(word, set()).add(tag)
    return {w: frozenset(t) for w, t in lex.items()}


def cases_to_text(instances: Iterable[Instance], delimiter: str = " ") -> str:
    buf = io.StringIO()
    write_case_file(instances, buf, delimiter)
    return buf.getvalue()
