import pytest

from nil2 import presentation
from nil2.builtin_groups import UnknownBuiltinError
from nil2.nil2core import FreeCoords, word_to_coords
from nil2.presentation import (BuiltinRef, DuplicateGroupError, GroupFile, ParseError, UnknownGeneratorError,
                               format_coords, parse_builtin_reference, parse_int_list, parse_word,
                               parse_word_list)

group_text = """
# the dihedral group of order 8
group D8 {
    gens: x y
    rels: x^4 y^2 [x,y]*x^-2
}
group Z6 = cyclic(6)   # builtin reference
group F2 {
    gens: a b
}
"""


def test_parse_words():
    assert str(parse_word('x^2*[x,y]^-1')) == 'x^2*[x,y]^-1'
    assert str(parse_word('(x*y)^2')) == '(x*y)^2'
    assert str(parse_word('[x^2,y]')) == '[x^2,y]'
    assert str(parse_word(' 1 ')) == '1'
    assert parse_word('x*y') == parse_word('x * y')
    assert parse_word('x^+3') == parse_word('x^3')
    assert [str(w) for w in parse_word_list('x; y^2;; [x,y]')] == ['x', 'y^2', '[x,y]']
    assert parse_word('[x,y]*z').generator_names() == {'x', 'y', 'z'}


def test_evaluate_words():
    assert word_to_coords(2, '[x,y]') == FreeCoords(2, (0, 0), (1,))
    assert word_to_coords(2, 'y*x') == FreeCoords(2, (1, 1), (-1,))
    assert word_to_coords(2, '(x*y)^2') == FreeCoords(2, (2, 2), (-1,))
    assert word_to_coords(2, 'x*x^-1') == FreeCoords.identity(2)
    assert word_to_coords(3, '[x*z,y]') == FreeCoords(3, (0, 0, 0), (1, 0, -1))
    with pytest.raises(UnknownGeneratorError):
        word_to_coords(2, 'z')


def test_parse_errors():
    with pytest.raises(ParseError) as exc:
        parse_word('x^')
    assert exc.value.line == 1
    assert exc.value.column == 3
    assert str(exc.value).startswith("line 1, column 3:")

    for bad in ['x**y', '2', 'x^y', '[x y]', '(x', 'x)', 'group', 'x%y', '']:
        with pytest.raises(ParseError):
            parse_word(bad)

    with pytest.raises(ParseError):
        parse_int_list('2, a')
    assert parse_int_list('2, 4') == [2, 4]


def test_group_file():
    gf = presentation.loads(group_text)
    assert gf.names() == ['D8', 'Z6', 'F2']
    assert len(gf) == 3
    D8 = gf.group('D8')
    assert D8.order == 8
    assert D8.name == 'D8'
    assert D8.relator_words == ('x^4', 'y^2', '[x,y]*x^-2')
    Z6 = gf.group('Z6')
    assert Z6.order == 6
    assert Z6.name == 'Z6'
    F2 = gf.group('F2')
    assert F2.gen_names == ('a', 'b')
    assert not F2.is_finite()

    # names not defined in the file are builtin references
    assert gf.group('heisenberg(3)').order == 27
    assert GroupFile().group('paper.generalized(3,2)').order == 729
    with pytest.raises(UnknownBuiltinError):
        gf.group('nosuchgroup')

    again = presentation.loads(gf.dumps())
    assert again.names() == gf.names()
    assert again.group('D8').order == 8
    assert again.group('Z6').order == 6


def test_group_file_load(tmp_path):
    path = tmp_path / 'groups.txt'
    path.write_text(group_text)
    assert presentation.load(str(path)).names() == ['D8', 'Z6', 'F2']


def test_group_file_errors():
    with pytest.raises(DuplicateGroupError):
        presentation.loads("group A = cyclic(2)\ngroup A = cyclic(3)\n")

    with pytest.raises(UnknownGeneratorError) as exc:
        presentation.loads("group G {\n    gens: x\n    rels: x^2 y\n}\n")
    assert exc.value.line == 3
    assert exc.value.column == 15

    bad_files = [
        "group G {\n gens: x x\n}",
        "group G {\n gens: rels\n}",
        "group G {\n gens: x\n rels: x^2\n",
        "group G { rels: x }",
        "group = cyclic(2)",
        "groups G = cyclic(2)",
        "group G = cyclic(2",
    ]
    for text in bad_files:
        with pytest.raises(ParseError):
            presentation.loads(text)


def test_builtin_references():
    assert parse_builtin_reference('paper.generalized(3,2)') == BuiltinRef('paper.generalized', (3, 2))
    assert parse_builtin_reference('dihedral8') == BuiltinRef('dihedral8', ())
    assert parse_builtin_reference('dihedral8()') == BuiltinRef('dihedral8', ())
    assert presentation.format_builtin(BuiltinRef('abelian', (2, 0))) == 'abelian(2,0)'
    with pytest.raises(ParseError):
        parse_builtin_reference('cyclic(6) extra')


def test_format_coords():
    names = ('x', 'y')
    assert format_coords(FreeCoords(2, (2, 1), (3,)), names) == 'x^2*y*[x,y]^3'
    assert format_coords(FreeCoords(2, (0, -1), (0,)), names) == 'y^-1'
    assert format_coords(FreeCoords.identity(2), names) == '1'
    for text in ['x^2*y*[x,y]^3', 'y^-1*[x,y]^-2', 'x']:
        assert format_coords(word_to_coords(2, text), names) == text
