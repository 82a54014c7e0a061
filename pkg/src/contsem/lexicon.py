"""Profile-indexed lexicon of typed lambda-term entries.

Three calculi ("profiles") share one word registry:

  A - plain continuation semantics, sentence type g>(g>t)>t;
  B - sentences abstract over a logical connective and carry two referent
      environments (proper nouns in the first, existentials in the second),
      which lets negation block indefinites while letting names through;
  C - sentences abstract over an environment combinator (Coord/Sub) for
      right-frontier bookkeeping; C has no per-word entries, leaves are
      assembled directly by the discourse module from word categories.

Entries are authored in the concrete term syntax and parsed once.  Content
words follow category templates, so new nouns/verbs/names can be minted
without touching the core entries.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Optional

from .errors import ContsemError
from .syntax import parse_term
from .terms import (
    E, T, SemType, Term, arrow,
    CONT_A, CONT_B, CONT_C, KAPPA_B, KAPPA_C, SENT_A, SENT_B, SENT_C,
)


class Profile(Enum):
    A = "A"
    B = "B"
    C = "C"

    @property
    def sentence_type(self) -> SemType:
        return {Profile.A: SENT_A, Profile.B: SENT_B, Profile.C: SENT_C}[self]

    @property
    def continuation_type(self) -> SemType:
        return {Profile.A: CONT_A, Profile.B: CONT_B, Profile.C: CONT_C}[self]

    @property
    def connective_type(self) -> Optional[SemType]:
        return {Profile.A: None, Profile.B: KAPPA_B, Profile.C: KAPPA_C}[self]


class Category(Enum):
    PROPER_NOUN = "pnoun"
    COMMON_NOUN = "noun"
    TRANSITIVE_VERB = "tverb"
    INTRANSITIVE_VERB = "iverb"
    DETERMINER = "det"
    PRONOUN = "pron"
    COPULA = "copula"
    ADJECTIVE = "adj"
    NEGATION_AUX = "neg"


class UnknownWord(ContsemError):
    def __init__(self, word: str, profile: Profile):
        self.word = word
        self.profile = profile
        super().__init__(f"no entry for {word!r} in profile {profile.value}")


class UnsupportedCategory(ContsemError):
    def __init__(self, category: Category, profile: Profile):
        self.category = category
        self.profile = profile
        super().__init__(
            f"no {category.value} template in profile {profile.value}"
        )


@dataclass(frozen=True)
class LexEntry:
    word: str
    category: Category
    profile: Profile
    term: Term


# ---------------------------------------------------------------------------
# Types of each category, per profile

def _category_types(sent: SemType) -> dict[Category, SemType]:
    np = arrow(arrow(E, sent), sent)
    prop = arrow(E, sent)
    adj = arrow(prop, E, sent)
    return {
        Category.PROPER_NOUN: np,
        Category.COMMON_NOUN: prop,
        Category.TRANSITIVE_VERB: arrow(np, np, sent),
        Category.INTRANSITIVE_VERB: arrow(np, sent),
        Category.DETERMINER: arrow(prop, prop, sent),
        Category.PRONOUN: np,
        Category.COPULA: arrow(adj, np, sent),
        Category.ADJECTIVE: adj,
        Category.NEGATION_AUX: arrow(arrow(np, sent), np, sent),
    }


CATEGORY_TYPES: dict[Profile, dict[Category, SemType]] = {
    Profile.A: _category_types(SENT_A),
    Profile.B: _category_types(SENT_B),
}


def content_type(category: Category) -> SemType:
    """Type of the content constant a template introduces."""
    if category == Category.PROPER_NOUN:
        return E
    if category == Category.TRANSITIVE_VERB:
        return arrow(E, E, T)
    return arrow(E, T)


# ---------------------------------------------------------------------------
# Entry sources

_SA = "g>(g>t)>t"
_NPA = f"(e>{_SA})>{_SA}"
_ADJA = f"(e>{_SA})>e>{_SA}"
_VPA = f"({_NPA})>{_SA}"

_KB = "t>t>t"
_PHIB = f"({_KB})>g>g>t"
_SB = f"({_KB})>g>g>({_PHIB})>t"
_NPB = f"(e>{_SB})>{_SB}"
_ADJB = f"(e>{_SB})>e>{_SB}"
_VPB = f"({_NPB})>{_SB}"

# Content-word templates; {p} is the content constant.
_TEMPLATES: dict[Profile, dict[Category, str]] = {
    Profile.A: {
        Category.PROPER_NOUN: rf"\P:e>{_SA}. P {{p}}",
        Category.COMMON_NOUN: rf"\x:e. \e:g. \phi:g>t. {{p}} x & phi e",
        Category.TRANSITIVE_VERB: (
            rf"\O:{_NPA}. \S:{_NPA}."
            rf" S (\x:e. O (\y:e. \e:g. \phi:g>t. {{p}} x y & phi e))"
        ),
        Category.INTRANSITIVE_VERB: (
            rf"\S:{_NPA}. S (\x:e. \e:g. \phi:g>t. {{p}} x & phi e)"
        ),
        Category.ADJECTIVE: (
            rf"\P:e>{_SA}. \x:e. \e:g. \phi:g>t. (P x e phi) & {{p}} x"
        ),
    },
    Profile.B: {
        Category.PROPER_NOUN: (
            rf"\P:e>{_SB}. \c:{_KB}. \e1:g. \e2:g. \phi:{_PHIB}."
            rf" P {{p}} c ({{p}}::e1) e2 phi"
        ),
        Category.COMMON_NOUN: (
            rf"\x:e. \c:{_KB}. \e1:g. \e2:g. \phi:{_PHIB}."
            rf" c ({{p}} x) (phi c e1 e2)"
        ),
        Category.TRANSITIVE_VERB: (
            rf"\O:{_NPB}. \S:{_NPB}."
            rf" S (\x:e. O (\y:e. \c:{_KB}. \e1:g. \e2:g. \phi:{_PHIB}."
            rf" c ({{p}} x y) (phi c e1 e2)))"
        ),
        Category.INTRANSITIVE_VERB: (
            rf"\S:{_NPB}. S (\x:e. \c:{_KB}. \e1:g. \e2:g. \phi:{_PHIB}."
            rf" c ({{p}} x) (phi c e1 e2))"
        ),
        Category.ADJECTIVE: (
            rf"\P:e>{_SB}. \x:e. \c:{_KB}. \e1:g. \e2:g. \phi:{_PHIB}."
            rf" (P x c e1 e2 phi) & {{p}} x"
        ),
    },
}

# Word-specific entries that have no content slot.
_FIXED: dict[Profile, dict[str, tuple[Category, str]]] = {
    Profile.A: {
        "a": (Category.DETERMINER,
              rf"\P:e>{_SA}. \Q:e>{_SA}. \e:g. \phi:g>t."
              rf" Ex (\x:e. P x e (\e':g. Q x (x::e') phi))"),
        "it": (Category.PRONOUN,
               rf"\P:e>{_SA}. \e:g. \phi:g>t. P (sel e) e phi"),
        "is": (Category.COPULA,
               rf"\A:{_ADJA}. \S:{_NPA}."
               rf" S (\x:e. \e:g. \phi:g>t."
               rf" (A (\y:e. \e0:g. \phi0:g>t. top) x e phi) & phi e)"),
        "doesnt": (Category.NEGATION_AUX,
                   rf"\V:{_VPA}. \S:{_NPA}. \e:g. \phi:g>t."
                   rf" ~(V S e (\e':g. top)) & phi e"),
    },
    Profile.B: {
        "a": (Category.DETERMINER,
              rf"\P:e>{_SB}. \Q:e>{_SB}. \c:{_KB}. \e1:g. \e2:g. \phi:{_PHIB}."
              rf" Ex (\x:e."
              rf" (\phi':{_PHIB}. (P x c e1 e2 phi') & (Q x c e1 e2 phi'))"
              rf" (\c':{_KB}. \e1':g. \e2':g. phi c e1' (x::e2')))"),
        "it": (Category.PRONOUN,
               rf"\P:e>{_SB}. \c:{_KB}. \e1:g. \e2:g. \phi:{_PHIB}."
               rf" P (sel (e1 ++ e2)) c e1 e2 phi"),
        "is": (Category.COPULA,
               rf"\A:{_ADJB}. \S:{_NPB}."
               rf" S (\x:e. \c:{_KB}. \e1:g. \e2:g. \phi:{_PHIB}."
               rf" c (A (\y:e. \c0:{_KB}. \f1:g. \f2:g. \psi:{_PHIB}. top)"
               rf" x c e1 e2 phi) (phi c e1 e2))"),
        "doesnt": (Category.NEGATION_AUX,
                   rf"\V:{_VPB}. \S:{_NPB}. \c:{_KB}. \e1:g. \e2:g. \phi:{_PHIB}."
                   rf" ~(V S (\a:t. \b:t. ~(c (~a) (~b))) e1 e2"
                   rf" (\c':{_KB}. \e1':g. \e2':g. ~(phi c' e1' e2)))"),
    },
}

# The alternative negation entry: the continuation goes inside the negation,
# so everything after the negated sentence ends up negated too.  Kept only to
# demonstrate why the shipped entry quarantines the negation instead.
_REJECTED_NEGATION_A = (
    rf"\V:{_VPA}. \S:{_NPA}. \e:g. \phi:g>t. ~(V S e (\e':g. phi e'))"
)

# Default word registry: word -> (category, content symbol).
_DEFAULT_WORDS: dict[str, tuple[Category, str]] = {
    "john": (Category.PROPER_NOUN, "j"),
    "mary": (Category.PROPER_NOUN, "mary"),
    "loves": (Category.TRANSITIVE_VERB, "love"),
    "own": (Category.TRANSITIVE_VERB, "own"),
    "woman": (Category.COMMON_NOUN, "woman"),
    "man": (Category.COMMON_NOUN, "man"),
    "car": (Category.COMMON_NOUN, "car"),
    "dog": (Category.COMMON_NOUN, "dog"),
    "walks": (Category.INTRANSITIVE_VERB, "walk"),
    "red": (Category.ADJECTIVE, "red"),
    "happy": (Category.ADJECTIVE, "happy"),
    "a": (Category.DETERMINER, ""),
    "it": (Category.PRONOUN, ""),
    "is": (Category.COPULA, ""),
    "doesnt": (Category.NEGATION_AUX, ""),
}

# Surface inflections folded onto a canonical word.
_ALIASES = {"owns": "own", "walk": "walks"}

# Words with stored term entries per profile (profile B carries exactly the
# eight core entries; profile C composes leaves from categories instead).
_STORED_WORDS = {
    Profile.A: ("john", "loves", "woman", "own", "car", "a", "it", "is",
                "red", "doesnt"),
    Profile.B: ("john", "own", "car", "a", "it", "is", "red", "doesnt"),
}


def _base_signature(words: dict[str, tuple[Category, str]]) -> dict[str, SemType]:
    sig: dict[str, SemType] = {}
    for category, symbol in words.values():
        if symbol:
            sig[symbol] = content_type(category)
    return sig


def _build_term(category: Category, profile: Profile, symbol: str,
                extra_sig: Optional[dict] = None) -> Term:
    templates = _TEMPLATES.get(profile, {})
    if category not in templates:
        raise UnsupportedCategory(category, profile)
    source = templates[category].format(p=symbol)
    sig = dict(extra_sig or {})
    sig[symbol] = content_type(category)
    return parse_term(source, sig)


class Lexicon:
    """Immutable store of entries plus the shared word registry."""

    def __init__(self, words: dict[str, tuple[Category, str]],
                 entries: dict[tuple[str, Profile], LexEntry],
                 aliases: Optional[dict[str, str]] = None):
        self._words = dict(words)
        self._entries = dict(entries)
        self._aliases = dict(aliases or {})

    def canonical(self, word: str) -> str:
        word = word.lower().replace("'", "")
        return self._aliases.get(word, word)

    def knows(self, word: str) -> bool:
        return self.canonical(word) in self._words

    def category(self, word: str) -> Category:
        key = self.canonical(word)
        if key not in self._words:
            raise UnknownWord(word, Profile.C)
        return self._words[key][0]

    def symbol(self, word: str) -> str:
        """Content constant for the word (entity name or predicate)."""
        key = self.canonical(word)
        if key not in self._words:
            raise UnknownWord(word, Profile.C)
        return self._words[key][1]

    def entry(self, word: str, profile: Profile) -> Term:
        key = (self.canonical(word), profile)
        if key not in self._entries:
            raise UnknownWord(word, profile)
        return self._entries[key].term

    def lex_entry(self, word: str, profile: Profile) -> LexEntry:
        key = (self.canonical(word), profile)
        if key not in self._entries:
            raise UnknownWord(word, profile)
        return self._entries[key]

    def entries(self, profile: Optional[Profile] = None) -> list[LexEntry]:
        out = [e for e in self._entries.values()
               if profile is None or e.profile == profile]
        return sorted(out, key=lambda e: (e.profile.value, e.word))

    def signature(self) -> dict[str, SemType]:
        """Content constants of all registered words, for the term parser."""
        return _base_signature(self._words)

    def extended(self, new_entries: Iterable[LexEntry]) -> "Lexicon":
        """New lexicon with extra entries; registry rows are added for any
        new words."""
        words = dict(self._words)
        entries = dict(self._entries)
        for entry in new_entries:
            symbol = words.get(entry.word, (entry.category, entry.word))[1]
            words[entry.word] = (entry.category, symbol or entry.word)
            entries[(entry.word, entry.profile)] = entry
        return Lexicon(words, entries, self._aliases)

    def with_rejected_negation(self) -> "Lexicon":
        """Variant lexicon whose profile-A negation is the rejected entry."""
        entries = dict(self._entries)
        entries[("doesnt", Profile.A)] = LexEntry(
            "doesnt", Category.NEGATION_AUX, Profile.A,
            negation_variant(Profile.A, rejected=True))
        return Lexicon(self._words, entries, self._aliases)


def make_entry(category: Category, word: str, profile: Profile,
               symbol: Optional[str] = None) -> LexEntry:
    """Instantiate the category's template for a new content word.

    The entry is shaped exactly like the corresponding core entry with the
    content constant renamed (by default, to the word itself).
    """
    word = word.lower().replace("'", "")
    term = _build_term(category, profile, symbol or word)
    return LexEntry(word, category, profile, term)


def negation_variant(profile: Profile, rejected: bool = False) -> Term:
    """The negation-auxiliary entry.

    rejected=True returns the discarded alternative (profile A only), where
    the continuation sits inside the negation.
    """
    if rejected:
        if profile != Profile.A:
            raise ValueError("the rejected negation variant exists only for profile A")
        return parse_term(_REJECTED_NEGATION_A, {})
    if profile not in _FIXED:
        raise UnknownWord("doesnt", profile)
    return parse_term(_FIXED[profile]["doesnt"][1], {})


@lru_cache(maxsize=1)
def default_lexicon() -> Lexicon:
    sig = _base_signature(_DEFAULT_WORDS)
    entries: dict[tuple[str, Profile], LexEntry] = {}
    for profile, words in _STORED_WORDS.items():
        for word in words:
            category, symbol = _DEFAULT_WORDS[word]
            if word in _FIXED[profile]:
                term = parse_term(_FIXED[profile][word][1], sig)
            else:
                term = _build_term(category, profile, symbol, sig)
            entries[(word, profile)] = LexEntry(word, category, profile, term)
    return Lexicon(_DEFAULT_WORDS, entries, _ALIASES)


_FILE_CATEGORIES = {c.value: c for c in Category
                    if c in (Category.PROPER_NOUN, Category.COMMON_NOUN,
                             Category.TRANSITIVE_VERB,
                             Category.INTRANSITIVE_VERB, Category.ADJECTIVE)}


def load_word_file(lines: Iterable[str], base: Optional[Lexicon] = None) -> Lexicon:
    """Extend a lexicon from `category word` lines (e.g. `noun dog`,
    `tverb sees`, `pnoun mary`).  Blank lines and `#` comments are skipped."""
    base = base or default_lexicon()
    new: list[LexEntry] = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] not in _FILE_CATEGORIES:
            raise ContsemError(
                f"lexicon file line {lineno}: expected `category word`, got {raw!r}"
            )
        category = _FILE_CATEGORIES[parts[0]]
        for profile in (Profile.A, Profile.B):
            new.append(make_entry(category, parts[1], profile))
    return base.extended(new)
