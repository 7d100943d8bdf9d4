import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockseg.alignment import (
    Alignment,
    AlignmentError,
    EmptyInputError,
    RaggedAlignmentError,
    load_fasta,
    load_matrix,
    observed_alphabet_size,
    write_matrix,
)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_fasta_two_records(tmp_path):
    a = load_fasta(write(tmp_path, "x.fa", ">s1\nAB\n>s2\nAC\n"))
    assert (a.rows, a.cols) == (2, 2)
    assert a.alphabets == (("A",), ("B", "C"))
    assert a.data.tolist() == [[0, 0], [0, 1]]


def test_fasta_gap_is_a_symbol(tmp_path):
    a = load_fasta(write(tmp_path, "x.fa", ">s1\nA-\n>s2\nA-\n"))
    assert a.alphabets == (("A",), ("-",))
    assert observed_alphabet_size(a, 2) == 1


def test_fasta_multiline_and_case(tmp_path):
    a = load_fasta(write(tmp_path, "x.fa", ">s1 desc\nac\ngT\n>s2\nAC\nGA\n"))
    assert a.cols == 4
    assert a.alphabets[3] == ("A", "T")
    assert a.labels()[0] == ["A", "C", "G", "T"]


def test_fasta_ragged_names_record(tmp_path):
    with pytest.raises(RaggedAlignmentError, match="s2"):
        load_fasta(write(tmp_path, "x.fa", ">s1\nACG\n>s2\nAC\n"))


def test_fasta_empty(tmp_path):
    with pytest.raises(EmptyInputError):
        load_fasta(write(tmp_path, "x.fa", "\n"))


def test_matrix_basic(tmp_path):
    a = load_matrix(write(tmp_path, "m.csv", "1,2\n2,1\n"), ",")
    assert (a.rows, a.cols) == (2, 2)
    assert a.alphabets == (("1", "2"), ("1", "2"))
    assert a.data.tolist() == [[0, 1], [1, 0]]


def test_matrix_single_row_tabs(tmp_path):
    a = load_matrix(write(tmp_path, "m.tsv", "a\tb\tc\n"), "\t")
    assert (a.rows, a.cols) == (1, 3)


def test_matrix_ragged_row_three(tmp_path):
    with pytest.raises(RaggedAlignmentError, match="row 3"):
        load_matrix(write(tmp_path, "m.csv", "a,b,c\na,b,c\na,b\n"), ",")


def test_observed_alphabet_size():
    a = Alignment(np.array([[0, 0, 0], [1, 0, 0], [0, 0, 2], [1, 0, 2]]),
                  (("a", "b"), ("x",), ("p", "q", "r")))
    assert observed_alphabet_size(a, 1) == 2
    assert observed_alphabet_size(a, 2) == 1
    # codes [0,0,2,2] over a declared alphabet of 3: distinct codes by scan
    assert observed_alphabet_size(a, 3) == len({0, 2})
    with pytest.raises(IndexError):
        observed_alphabet_size(a, 4)
    with pytest.raises(IndexError):
        observed_alphabet_size(a, 0)


def test_codes_checked_against_alphabet():
    with pytest.raises(AlignmentError):
        Alignment(np.array([[0, 2]]), (("a",), ("x", "y")))
    with pytest.raises(AlignmentError):
        Alignment(np.array([[0]]), (("a", "a"),))


def test_alignment_is_immutable():
    a = Alignment.from_labels([["a", "b"]])
    with pytest.raises(ValueError):
        a.data[0, 0] = 1


label_tables = st.integers(1, 6).flatmap(
    lambda m: st.lists(
        st.lists(st.sampled_from("ACDEFG-"), min_size=m, max_size=m), min_size=1, max_size=8))


@settings(max_examples=60, deadline=None)
@given(label_tables)
def test_roundtrip_and_fasta_matrix_agree(tmp_path_factory, rows):
    d = tmp_path_factory.mktemp("rt")
    a = Alignment.from_labels(rows)
    write_matrix(a, d / "m.csv", ",")
    b = load_matrix(d / "m.csv", ",")
    assert a == b
    fasta = "".join(f">r{i}\n{''.join(r)}\n" for i, r in enumerate(rows))
    (d / "x.fa").write_text(fasta)
    assert load_fasta(d / "x.fa") == a
    for j in range(1, a.cols + 1):
        assert observed_alphabet_size(a, j) <= len(a.alphabets[j - 1])
