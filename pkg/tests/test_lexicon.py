import pytest
from hypothesis import given, settings, strategies as st

from contsem.lexicon import (
    CATEGORY_TYPES, Category, Lexicon, Profile, UnknownWord,
    UnsupportedCategory, default_lexicon, load_word_file, make_entry,
    negation_variant,
)
from contsem.syntax import parse_term
from contsem.terms import (
    App, Const, E, Lam, T, Var, alpha_eq, arrow, is_closed, subst_consts,
    typecheck,
)

LEX = default_lexicon()

KB = "t>t>t"
PHIB = f"({KB})>g>g>t"
SB = f"({KB})>g>g>({PHIB})>t"


def test_car_entry_exact_form():
    expected = parse_term(
        rf"\x:e. \c:{KB}. \e1:g. \e2:g. \phi:{PHIB}. c (car x) (phi c e1 e2)",
        LEX.signature())
    assert alpha_eq(LEX.entry("car", Profile.B), expected)


def test_john_entry_has_np_type():
    sent = Profile.B.sentence_type
    assert typecheck(LEX.entry("john", Profile.B)) == arrow(arrow(E, sent), sent)


def test_pronoun_entry_profile_a():
    expected = parse_term(r"\P:e>g>(g>t)>t. \e:g. \phi:g>t. P (sel e) e phi")
    assert alpha_eq(LEX.entry("it", Profile.A), expected)


def test_every_shipped_entry_is_closed_and_typechecks():
    for entry in LEX.entries():
        assert is_closed(entry.term), entry.word
        expected = CATEGORY_TYPES[entry.profile][entry.category]
        assert typecheck(entry.term) == expected, (entry.word, entry.profile)


def test_profile_b_ships_exactly_the_eight_core_entries():
    words = {e.word for e in LEX.entries(Profile.B)}
    assert words == {"john", "own", "car", "a", "it", "is", "red", "doesnt"}


def test_inflection_aliases():
    assert LEX.entry("owns", Profile.B) == LEX.entry("own", Profile.B)
    assert LEX.canonical("Doesn't") == "doesnt"


def test_unknown_word():
    with pytest.raises(UnknownWord):
        LEX.entry("unicorn", Profile.B)
    with pytest.raises(UnknownWord):
        LEX.entry("mary", Profile.B)  # registry word without a B term


def test_make_entry_common_noun_shapes_like_car():
    dog = make_entry(Category.COMMON_NOUN, "dog", Profile.B)
    renamed = subst_consts(LEX.entry("car", Profile.B),
                           {"car": Const("dog", arrow(E, T))})
    assert alpha_eq(dog.term, renamed)


def test_make_entry_transitive_verb_shapes_like_own():
    sees = make_entry(Category.TRANSITIVE_VERB, "sees", Profile.B)
    renamed = subst_consts(LEX.entry("own", Profile.B),
                           {"own": Const("sees", arrow(E, E, T))})
    assert alpha_eq(sees.term, renamed)


def test_make_entry_rejects_determiners():
    with pytest.raises(UnsupportedCategory):
        make_entry(Category.DETERMINER, "every", Profile.B)
    with pytest.raises(UnsupportedCategory):
        make_entry(Category.PRONOUN, "she", Profile.A)


def test_negation_variant_accepted_b_matches_table():
    expected = parse_term(
        rf"\V:((e>{SB})>{SB})>{SB}. \S:(e>{SB})>{SB}."
        rf" \c:{KB}. \e1:g. \e2:g. \phi:{PHIB}."
        rf" ~(V S (\a:t. \b:t. ~(c (~a) (~b))) e1 e2"
        rf" (\c':{KB}. \e1':g. \e2':g. ~(phi c' e1' e2)))")
    assert alpha_eq(negation_variant(Profile.B), expected)
    assert alpha_eq(negation_variant(Profile.B), LEX.entry("doesnt", Profile.B))


def test_negation_continuation_passes_outer_existential_env():
    # Inside \V \S \c \e1 \e2 \phi ... (\c' \e1' \e2'. ~(phi c' e1' X)):
    # X must be the outer e2 (index 4 under the three continuation binders),
    # not the continuation's own e2' (index 0).
    term = LEX.entry("doesnt", Profile.B)
    for _ in range(6):
        assert isinstance(term, Lam)
        term = term.body
    spine = term  # ~(V S conn e1 e2 K)
    k = spine.arg.arg
    for _ in range(3):
        assert isinstance(k, Lam)
        k = k.body
    assert isinstance(k.arg, App)
    last_arg = k.arg.arg
    assert last_arg == Var(4)
    assert last_arg != Var(0)


def test_negation_variant_rejected_is_profile_a_only():
    rejected = negation_variant(Profile.A, rejected=True)
    expected = parse_term(
        r"\V:((e>g>(g>t)>t)>g>(g>t)>t)>g>(g>t)>t."
        r" \S:(e>g>(g>t)>t)>g>(g>t)>t."
        r" \e:g. \phi:g>t. ~(V S e (\e':g. phi e'))")
    assert alpha_eq(rejected, expected)
    with pytest.raises(ValueError):
        negation_variant(Profile.B, rejected=True)


def test_with_rejected_negation_swaps_profile_a_entry():
    swapped = LEX.with_rejected_negation()
    assert alpha_eq(swapped.entry("doesnt", Profile.A),
                    negation_variant(Profile.A, rejected=True))
    assert alpha_eq(swapped.entry("doesnt", Profile.B),
                    LEX.entry("doesnt", Profile.B))


@settings(max_examples=40, deadline=None)
@given(st.from_regex(r"[a-z]{3,8}", fullmatch=True),
       st.sampled_from([Category.COMMON_NOUN, Category.PROPER_NOUN,
                        Category.TRANSITIVE_VERB, Category.INTRANSITIVE_VERB,
                        Category.ADJECTIVE]),
       st.sampled_from([Profile.A, Profile.B]))
def test_templates_typecheck_for_arbitrary_words(word, category, profile):
    entry = make_entry(category, word, profile)
    assert typecheck(entry.term) == CATEGORY_TYPES[profile][category]


def test_load_word_file():
    lex = load_word_file(["noun cat  # feline", "", "tverb sees", "pnoun sue"])
    assert lex.category("cat") == Category.COMMON_NOUN
    assert typecheck(lex.entry("sees", Profile.B)) == \
        CATEGORY_TYPES[Profile.B][Category.TRANSITIVE_VERB]
    assert lex.symbol("sue") == "sue"
    # base lexicon is untouched
    with pytest.raises(UnknownWord):
        LEX.entry("cat", Profile.A)
