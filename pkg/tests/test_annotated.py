import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import BIKE
from sbinet.annotated import (
    extract_bindings,
    load_annotated_file,
    load_annotated_text,
    parse_csv,
    split_prelude,
)
from sbinet.errors import (
    NoPrelude,
    NoTableFound,
    RaggedRow,
    TurtleSyntaxError,
    UnboundEntity,
    UndeclaredPrefix,
    UnterminatedQuote,
)
from sbinet.turtle import (
    RDF_TYPE,
    Term,
    Triple,
    parse_turtle_document,
    parse_turtle_subset,
    serialize_triples,
)

PRELUDE = """\
@prefix graph: <http://download.wikicrimes.org/ont/graph> .
@prefix ccsv: <http://download.wikicrimes.org/ont/ccsv> .
@prefix qoe-m: <http://download.wikicrimes.org/ont/qoe-m> .
<dataset>
    a graph:NodeSet ;
    graph:isNodeSetFor <g> ;
    ccsv:hasDataRecord <node> .
<node>
    graph:hasId <id> .
<id>
    ccsv:atColumn 0 .
"""


class TestSplitPrelude:
    def test_reference_layout_splits_at_quoted_header(self):
        text = BIKE[0].read_text(encoding="utf-8")
        prelude, csv_body = split_prelude(text)
        assert prelude + csv_body == text
        assert prelude.count("\n") == 26  # annotations occupy the first 26 lines
        assert csv_body.startswith('"STATION NUMBER"')

    def test_empty_input(self):
        with pytest.raises(NoTableFound):
            split_prelude("")

    def test_csv_first_line_means_no_prelude(self):
        with pytest.raises(NoPrelude):
            split_prelude('"a", "b"\n1, 2\n')

    def test_blank_line_separator_supports_unquoted_headers(self):
        text = PRELUDE + "\nid,name\n1,x\n"
        prelude, csv_body = split_prelude(text)
        assert prelude.endswith("\n\n")
        assert csv_body == "id,name\n1,x\n"
        assert prelude + csv_body == text

    def test_prelude_without_table(self):
        with pytest.raises(NoTableFound):
            split_prelude(PRELUDE)

    @given(st.text(alphabet="ab\"\n ,1@<>.:;-_", max_size=200))
    def test_partition_property(self, text):
        try:
            prelude, csv_body = split_prelude(text)
        except (NoTableFound, NoPrelude):
            return
        assert prelude + csv_body == text


class TestTurtleSubset:
    def test_at_column_triple(self):
        triples = parse_turtle_subset(
            "@prefix ccsv: <http://x/ccsv> .\n<id> ccsv:atColumn 0 .\n"
        )
        assert triples == {
            Triple(Term.iri("id"), Term.iri("http://x/ccsvatColumn"), Term.integer(0))
        }

    def test_a_shorthand_produces_rdf_type(self):
        triples = parse_turtle_subset(
            "@prefix graph: <http://x/g> .\n"
            "@prefix qoe-m: <http://x/q> .\n"
            "<node> a graph:Node ; a qoe-m:Bicycle-Share_Station .\n"
        )
        assert triples == {
            Triple(Term.iri("node"), RDF_TYPE, Term.iri("http://x/gNode")),
            Triple(Term.iri("node"), RDF_TYPE, Term.iri("http://x/qBicycle-Share_Station")),
        }

    def test_empty_text(self):
        assert parse_turtle_subset("") == frozenset()

    def test_object_lists_and_comments(self):
        triples = parse_turtle_subset(
            "# header comment\n<s> <p> 1, 2, \"três\" . # trailing\n"
        )
        objects = {t.object for t in triples}
        assert objects == {Term.integer(1), Term.integer(2), Term.string("três")}

    def test_undeclared_prefix(self):
        with pytest.raises(UndeclaredPrefix) as err:
            parse_turtle_subset("<s> ccsv:atColumn 0 .")
        assert err.value.line == 1

    def test_syntax_error_carries_position(self):
        with pytest.raises(TurtleSyntaxError) as err:
            parse_turtle_subset("<s> <p> .\n")
        assert err.value.line == 1
        assert err.value.column == 9

    def test_unknown_constructs_rejected(self):
        with pytest.raises(TurtleSyntaxError):
            parse_turtle_subset("<s> <p> [ <q> 1 ] .")  # blank nodes unsupported
        with pytest.raises(TurtleSyntaxError):
            parse_turtle_subset('@base <http://x/> .')

    def test_prefix_expansion_is_plain_concatenation(self):
        doc = parse_turtle_document(
            "@prefix geo: <http://www.w3.org/2003/01/geo/wgs84_pos> .\n<n> geo:lat <lat> .\n"
        )
        (triple,) = doc.triples
        assert triple.predicate == Term.iri("http://www.w3.org/2003/01/geo/wgs84_poslat")

    def test_string_escapes(self):
        (triple,) = parse_turtle_subset('<s> <p> "a\\"b\\\\c" .')
        assert triple.object == Term.string('a"b\\c')


iris = st.text(alphabet="abcxyz:/#._-", min_size=1, max_size=12).map(
    lambda s: Term.iri(s)
)
objects = st.one_of(
    iris,
    st.integers(min_value=-10**6, max_value=10**6).map(Term.integer),
    st.text(max_size=12).map(Term.string),
)
triples_strategy = st.sets(
    st.builds(Triple, subject=iris, predicate=iris, object=objects), max_size=25
)


class TestRoundTrip:
    @settings(max_examples=200)
    @given(triples_strategy)
    def test_serialize_then_parse_is_identity(self, triples):
        assert parse_turtle_subset(serialize_triples(triples)) == frozenset(triples)


class TestParseCsv:
    def test_reference_row(self):
        table = parse_csv(
            '"STATION NUMBER", "LONG", "LAT", "STATION NAME"\n'
            '1, -38510134, -3732294, "Praça Luiza Távora"\n'
        )
        assert table.header == ("STATION NUMBER", "LONG", "LAT", "STATION NAME")
        assert table.rows == (("1", "-38510134", "-3732294", "Praça Luiza Távora"),)

    def test_header_only(self):
        table = parse_csv("a,b,c\n")
        assert table.row_count == 0 and table.col_count == 3

    def test_ragged_row(self):
        with pytest.raises(RaggedRow) as err:
            parse_csv("a,b,c,d\n1,2,3\n")
        assert err.value.row_index == 0

    def test_unterminated_quote(self):
        with pytest.raises(UnterminatedQuote):
            parse_csv('a,b\n1,"oops\n')

    def test_embedded_commas_and_quotes(self):
        table = parse_csv('a,b\n"x, y","He said ""hi"""\n')
        assert table.rows == (("x, y", 'He said "hi"'),)

    def test_unquoted_cells_are_trimmed(self):
        table = parse_csv("a,b\n  1 ,  two words  \n")
        assert table.rows == (("1", "two words"),)


class TestExtractBindings:
    def test_node_side_bindings(self):
        ds = load_annotated_file(BIKE[0])
        assert ds.bindings.as_dict() == {"id": 0, "long": 1, "lat": 2, "label": 3}
        assert ds.role == "NodeSet"
        assert ds.graph_id == "graphXPTO"

    def test_edge_side_bindings(self):
        ds = load_annotated_file(BIKE[1])
        assert ds.bindings.as_dict() == {"record": 0, "user": 1, "source": 4, "target": 7}
        assert ds.role == "EdgeSet"

    def test_unbound_entity(self):
        text = PRELUDE.replace("<id>\n    ccsv:atColumn 0 .\n", "")
        doc = parse_turtle_document(text)
        with pytest.raises(UnboundEntity) as err:
            extract_bindings(doc.triples, doc.prefixes)
        assert err.value.entity == "id"

    def test_binding_out_of_range_rejected(self):
        bad = PRELUDE.replace("ccsv:atColumn 0", "ccsv:atColumn 7") + '"only"\n"x"\n'
        with pytest.raises(Exception, match="column 7"):
            load_annotated_text(bad)

    def test_every_binding_indexes_a_real_column(self):
        for path in (BIKE[0], BIKE[1]):
            ds = load_annotated_file(path)
            for binding in ds.bindings.entries:
                assert 0 <= binding.column < ds.table.col_count
