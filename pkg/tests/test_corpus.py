import io

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mbsmooth import FeatureTemplate, Instance, extract_unknown_word_cases, load_vector_lexicon, parse_case_file, vectorize_cases, write_case_file
from mbsmooth.corpus import (
    ambiguity_class,
    parse_cases,
    read_tagged_corpus,
    tag_lexicon_from_corpus,
    load_tag_lexicon,
    write_tagged_corpus,
)
from mbsmooth.errors import DimensionMismatch, EmptyFile, InvalidTemplate, MissingToken, ParseError, RaggedRow


def test_parse_pp_line(tmp_path):
    p = tmp_path / "cases"
    p.write_text("ate pizza with fork V\n\nate pizza with cheese N\n")
    cases = parse_case_file(p)
    assert cases == [Instance(("ate", "pizza", "with", "fork"), "V"), Instance(("ate", "pizza", "with", "cheese"), "N")]


def test_parse_ratnaparkhi_ids_and_commas():
    cases = parse_cases(["42960 gives authority to administration V"], skip_columns=1)
    assert cases[0] == Instance(("gives", "authority", "to", "administration"), "V")
    cases = parse_cases(["ate,pizza,with,fork,V."], delimiter=",")
    assert cases[0].label == "V."


def test_ragged_row_reports_line(tmp_path):
    p = tmp_path / "cases"
    p.write_text("a b c d V\na b c d N\n\na b c d\n")
    with pytest.raises(RaggedRow) as err:
        parse_case_file(p)
    assert err.value.line_number == 4
    with pytest.raises(RaggedRow):
        parse_cases(["a b c d"], arity=4)


def test_empty_file(tmp_path):
    p = tmp_path / "e"
    p.write_text("\n\n")
    with pytest.raises(EmptyFile):
        parse_case_file(p)


token = st.text(alphabet="abcxyz.-_ABC019", min_size=1, max_size=6)


@given(st.lists(st.tuples(st.lists(token, min_size=3, max_size=3), token), min_size=1, max_size=20))
def test_round_trip(rows):
    cases = [Instance(tuple(x), y) for x, y in rows]
    buf = io.StringIO()
    write_case_file(cases, buf)
    assert parse_cases(buf.getvalue().splitlines()) == cases


def _lexicon_text(d=25):
    vals = " ".join(f"{0.1 * i:.1f}" for i in range(d))
    return f"pizza {vals}\nfork {vals}\npizza {vals.replace('0.0', '1.0', 1)}\n"


def test_vector_lexicon(tmp_path):
    p = tmp_path / "vec"
    p.write_text(_lexicon_text())
    lex = load_vector_lexicon(p)
    assert lex.dimension == 25 and len(lex) == 2
    assert lex.duplicates == 1
    assert lex["pizza"][0] == 1.0


def test_vector_lexicon_errors(tmp_path):
    p = tmp_path / "vec"
    p.write_text("a " + " ".join(["1"] * 25) + "\nb " + " ".join(["1"] * 24) + "\n")
    with pytest.raises(DimensionMismatch):
        load_vector_lexicon(p)
    p.write_text("a 1 2 x\n")
    with pytest.raises(ParseError):
        load_vector_lexicon(p)


def test_vectorize(tmp_path):
    p = tmp_path / "vec"
    lines = [f"{w} " + " ".join(str(float(i + j)) for j in range(25)) for i, w in enumerate(["ate", "pizza", "with", "fork"])]
    p.write_text("\n".join(lines) + "\n")
    lex = load_vector_lexicon(p)
    cases = [Instance(("ate", "pizza", "with", "fork"), "V"), Instance(("ate", "pizza", "with", "cheese"), "N")]
    vec = vectorize_cases(cases, lex)
    assert len(vec) == 2 and [c.label for c in vec] == ["V", "N"]
    assert all(v.shape == (25,) for v in vec[0].values)
    assert not vec[1].values[3].any()
    with pytest.raises(MissingToken, match="cheese"):
        vectorize_cases(cases, lex, fallback="error")


SENT = [("The", "DT"), ("Bonds", "NNS"), ("rallied", "VBD")]
LEX = {"rallied": {"VBD", "VBN"}, "The": {"DT"}}


def test_extract_bonds():
    cases = extract_unknown_word_cases([SENT], "pdass", LEX)
    bonds = cases[0]
    assert bonds == Instance(("B", "DT", "VBD-VBN", "s", "d"), "NNS")
    rallied = cases[1]
    assert rallied.values[1] == "NNS" and rallied.values[2] == "_"


def test_extract_boundaries_and_padding():
    sent = [("an", "JJ"), ("ox", "NN")]
    cases = extract_unknown_word_cases(sent, "pddass", {}, open_class=None)
    assert cases[0].values == ("a", "_", "_", "UNK", "n", "_")
    assert cases[1].values[1:3] == ("JJ", "_")
    assert cases[1].values[3] == "_"


def test_extract_filters_closed_class():
    cases = extract_unknown_word_cases([SENT], "pdass", LEX)
    assert [c.label for c in cases] == ["NNS", "VBD"]


def test_template_validation():
    with pytest.raises(InvalidTemplate):
        FeatureTemplate("pdx")
    with pytest.raises(InvalidTemplate):
        FeatureTemplate("")
    assert len(FeatureTemplate("pdddaaasss")) == 10


@given(st.text(alphabet="pdas", min_size=1, max_size=10).filter(lambda t: t.count("p") <= 1))
def test_extract_arity(code):
    cases = extract_unknown_word_cases([SENT], code, LEX, open_class=None)
    assert all(c.arity == len(code) for c in cases)


def test_ambiguity_class():
    assert ambiguity_class({"VBN", "VBD"}) == "VBD-VBN"
    assert ambiguity_class(None) == "UNK"


def test_tagged_corpus_io(tmp_path):
    p = tmp_path / "corpus"
    write_tagged_corpus([SENT, [("a/b", "X")]], p)
    back = read_tagged_corpus(p)
    assert back == [SENT, [("a/b", "X")]]
    lex = tag_lexicon_from_corpus(back)
    assert lex["Bonds"] == {"NNS"}
    p.write_text("word-without-tag\n")
    with pytest.raises(ParseError):
        read_tagged_corpus(p)
    lp = tmp_path / "lex"
    lp.write_text("rallied VBD VBN\n")
    assert load_tag_lexicon(lp) == {"rallied": {"VBD", "VBN"}}
