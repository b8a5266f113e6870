from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from magahi_lid.errors import ParseError, UndefinedRatioError
from magahi_lid.lexicon import Language
from magahi_lid.suffixrules import (
    EvidenceSource,
    Rule,
    RuleKind,
    RuleSet,
    SuffixTable,
    apply_rules,
    default_rules,
    extract_suffixes,
    load_rules,
    load_suffixes,
    match_suffix,
    parse_rules,
    save_rules,
    save_suffixes,
    shared_suffix_fraction,
)
from magahi_lid.textcore import grapheme_split, tokenize

from conftest import read_lines
from oracles import brute_force_suffixes, clusters

HIN, MAG = Language.HINDI, Language.MAGAHI


def table(lang, *keys):
    return SuffixTable(lang, {k: 1 for k in keys})


def test_extract_gel():
    assert extract_suffixes(["गेल"], MAG).entries == {"ल": 1}


def test_extract_single_cluster_word():
    assert extract_suffixes(["क"], MAG).entries == {}


def test_extract_caps_at_three_clusters():
    # लइकन = ल|इ|क|न : suffixes न, कन, इकन
    assert extract_suffixes(["लइकन"], MAG).entries == {"न": 1, "कन": 1, "इकन": 1}


def test_extract_max_len():
    assert extract_suffixes(["लइकन"], MAG, max_len=1).entries == {"न": 1}


def test_extract_skips_hidden_and_punctuation():
    assert extract_suffixes(["abc गेल ।"], MAG).entries == {"ल": 1}


def test_extract_matches_brute_force():
    corpus = read_lines("suffix_corpus.txt")
    assert Counter(extract_suffixes(corpus, MAG).entries) == brute_force_suffixes(corpus)


def test_suffix_bounds(mag_corpus):
    words = {t.surface for line in mag_corpus for t in tokenize(line) if t.is_devanagari}
    tab = extract_suffixes(mag_corpus, MAG)
    for key, freq in tab.entries.items():
        assert 1 <= len(grapheme_split(key)) <= 3 and freq >= 1
    # a suffix may coincide with some other word, but never with the word it came from
    for w in words:
        assert w not in extract_suffixes([w], MAG).entries


def test_shared_fraction_examples():
    a = table(MAG, "ल", "न")
    b = table(HIN, "ल", "क", "ग")
    ov = shared_suffix_fraction(a, b)
    assert ov.ratio == Fraction(1, 4)
    assert (ov.shared, ov.union, ov.only_a, ov.only_b) == (1, 4, 1, 2)
    assert shared_suffix_fraction(a, a).ratio == 1
    assert shared_suffix_fraction(a, table(HIN, "क")).ratio == 0


def test_shared_fraction_empty():
    with pytest.raises(UndefinedRatioError):
        shared_suffix_fraction(table(MAG), table(HIN, "क"))


suffix_sets = st.sets(st.sampled_from(["ल", "न", "क", "ग", "कन", "ेल", "लक", "वा"]), min_size=1)


@given(suffix_sets, suffix_sets)
def test_shared_fraction_symmetric_and_bounded(a, b):
    ta, tb = table(MAG, *a), table(HIN, *b)
    r = shared_suffix_fraction(ta, tb).ratio
    assert r == shared_suffix_fraction(tb, ta).ratio
    assert 0 <= r <= 1
    assert r == Fraction(len(a & b), len(a | b))


def test_match_suffix_longest_first():
    tab = SuffixTable(MAG, {"न": 7, "कन": 2, "इकन": 1})
    hit = match_suffix("लइकन", tab)
    assert (hit.suffix, hit.length, hit.frequency) == ("इकन", 3, 1)


def test_match_suffix_falls_back_to_one_cluster():
    hit = match_suffix("लइकन", table(MAG, "न"))
    assert hit.suffix == "न" and hit.length == 1


def test_match_suffix_none():
    assert match_suffix("लइकन", table(MAG, "ग")) is None
    # the whole word is never its own suffix
    assert match_suffix("गेल", table(MAG, "गेल")) is None


@given(st.lists(st.sampled_from(["ल", "इ", "क", "न", "गे", "वा", "त्र"]), min_size=1, max_size=6), suffix_sets)
def test_match_suffix_is_longest(parts, keys):
    word = "".join(parts)
    tab = table(MAG, *keys)
    hit = match_suffix(word, tab)
    cl = clusters(word)
    proper = ["".join(cl[len(cl) - k :]) for k in range(1, min(3, len(cl) - 1) + 1)]
    present = [s for s in proper if s in tab.entries]
    if hit is None:
        assert not present
    else:
        assert hit.suffix == present[-1]


def test_suffix_save_load(tmp_path, hin_corpus):
    tab = extract_suffixes(hin_corpus, HIN)
    save_suffixes(tab, tmp_path / "s.tsv")
    assert load_suffixes(tmp_path / "s.tsv") == tab


def test_suffix_load_rejects_long_keys(tmp_path):
    p = tmp_path / "s.tsv"
    p.write_text("#lang=mag\ttotal=1\nलइकन\t1\n", encoding="utf-8")
    with pytest.raises(ParseError):
        load_suffixes(p)


@settings(max_examples=250)
@given(st.sampled_from([HIN, MAG]), st.dictionaries(st.sampled_from(["ल", "न", "कन", "इकन", "ेल", "ि", "त्र", "वा"]), st.integers(1, 10**6)))
def test_suffix_save_load_identity(tmp_path_factory, lang, entries):
    path = tmp_path_factory.mktemp("sfx") / "s.tsv"
    tab = SuffixTable(lang, entries)
    save_suffixes(tab, path)
    assert load_suffixes(path) == tab


# -- rules -------------------------------------------------------------------


def test_default_rules_cover_features():
    rs = default_rules()
    by_id = {r.id: r for r in rs}
    for rid in ("mag-prt-wa", "mag-prt-ia", "mag-prt-ma", "mag-clf-go", "mag-pl-an", "hin-erg-ne", "hin-fut-ga"):
        assert rid in by_id
    assert by_id["hin-erg-ne"].pattern == ("*", "ने")
    priorities = [r.priority for r in rs]
    assert priorities == sorted(priorities, reverse=True)


def test_load_rules_file(tmp_path):
    p = tmp_path / "rules.tsv"
    p.write_text("# comment\nr1\tENDS\tगो\tmag\t2\nr2\tCONTAINS\tहै\thin\t0\n", encoding="utf-8")
    rs = load_rules(p)
    assert [r.id for r in rs] == ["r1", "r2"]
    assert rs.rules[0] == Rule("r1", RuleKind.ENDS, ("गो",), MAG, 2)


def test_empty_rule_file(tmp_path):
    p = tmp_path / "rules.tsv"
    p.write_text("", encoding="utf-8")
    assert len(load_rules(p)) == 0


@pytest.mark.parametrize(
    "line, fragment",
    [
        ("r1\tENDS", "5 tab-separated"),
        ("r1\tSTARTS\tगो\tmag\t1", "unknown pattern kind"),
        ("r1\tENDS\tgo\tmag\t1", "not Devanagari"),
        ("r1\tENDS\tगो\tbho\t1", "unknown language"),
        ("r1\tENDS\tगो\tmag\t-1", "priority"),
        ("r1\tFOLLOWS\tने\thin\t1", "needs 2"),
    ],
)
def test_rule_parse_errors(line, fragment):
    with pytest.raises(ParseError) as exc:
        parse_rules(["# header", line])
    assert exc.value.lineno == 2
    assert fragment in str(exc.value)


def test_duplicate_rule_id():
    with pytest.raises(ParseError) as exc:
        parse_rules(["r1\tENDS\tगो\tmag\t1", "r1\tENDS\tवा\tmag\t1"])
    assert exc.value.lineno == 2


def test_rules_save_load(tmp_path):
    rs = default_rules()
    save_rules(rs, tmp_path / "r.tsv")
    assert load_rules(tmp_path / "r.tsv") == rs


def test_plural_rule_fires():
    rs = parse_rules(["mag-pl\tENDS\tन\tmag\t0"])
    (ev,) = apply_rules(tokenize("लइकन"), rs)
    assert ev.language is MAG and ev.source is EvidenceSource.SUFFIX_RULE and ev.weight == 1


def test_ergative_follows_rule():
    rs = parse_rules(["erg\tFOLLOWS\t* ने\thin\t2"])
    (ev,) = apply_rules(tokenize("राम ने आम दिया"), rs)
    assert ev.language is HIN and ev.weight == 3 and ev.position == 1
    assert apply_rules(tokenize("ने राम"), rs) == []
    specific = parse_rules(["erg\tFOLLOWS\tराम ने\thin\t0"])
    assert len(apply_rules(tokenize("राम ने"), specific)) == 1
    assert apply_rules(tokenize("सीता ने"), specific) == []


def test_rule_ignores_hidden_tokens():
    rs = parse_rules(["r\tENDS\tन\tmag\t0"])
    assert apply_rules(tokenize("लइकन ABCन"), rs)[0].position == 0
    assert len(apply_rules(tokenize("लइकन ABCन"), rs)) == 1


def test_ends_rule_needs_a_stem():
    rs = parse_rules(["r\tENDS\tगो\tmag\t0"])
    assert apply_rules(tokenize("गो"), rs) == []
    assert len(apply_rules(tokenize("एगो"), rs)) == 1


def test_apply_rules_empty():
    assert apply_rules([], default_rules()) == []


@given(st.permutations(default_rules().rules), st.lists(st.sampled_from(["लइकन", "एगो", "राम", "ने", "जाएगा", "है", "घरवा"]), max_size=6))
def test_evidence_multiset_is_order_independent(perm, words):
    toks = tokenize(" ".join(words))
    a = Counter(apply_rules(toks, default_rules()))
    b = Counter(apply_rules(toks, RuleSet(tuple(perm))))
    assert a == b
