import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from propsearch import (
    BuildError,
    IndexCorruptionError,
    IndexFormatError,
    PropertyRecord,
    build_index,
    debug_export,
    load_index,
    load_model,
    save_index,
)
from propsearch.index import IndexEntry, PropertyIndex

from conftest import STOPWORDS, random_model


def roundtrip(index):
    buf = io.BytesIO()
    save_index(index, buf)
    buf.seek(0)
    return load_index(buf), buf.getvalue()


class TestBuildIndex:
    def test_label_vector_is_token_sum(self, stopwords):
        model = load_model(io.StringIO("2 2\nend 1 0\ntime 0 1\n"))
        props = [PropertyRecord("P582", "end time")]
        idx = build_index(model, props, False, stopwords)
        np.testing.assert_array_equal(idx.entries[0].vector, [1, 1])

    def test_all_oov_property_kept_with_absent_vector(self, toy_model, stopwords):
        props = [PropertyRecord("P4", "zzzz", aliases=("q",))]
        idx = build_index(toy_model, props, False, stopwords)
        assert idx.entries[0].vector is None
        assert idx.oov_count == 1

    def test_use_description_changes_vector(self, stopwords):
        model = load_model(io.StringIO("2 2\nend 1 0\nmoment 0 1\n"))
        props = [PropertyRecord("P1", "end", description="moment")]
        without = build_index(model, props, False, stopwords)
        with_desc = build_index(model, props, True, stopwords)
        assert not np.array_equal(without.entries[0].vector, with_desc.entries[0].vector)
        assert with_desc.use_description

    def test_sorted_by_id_and_order_independent(self, toy_model, toy_properties, stopwords):
        fwd = build_index(toy_model, toy_properties, False, stopwords)
        rev = build_index(toy_model, list(reversed(toy_properties)), False, stopwords)
        assert fwd == rev
        assert fwd.ids == sorted(fwd.ids, key=lambda p: int(p[1:]))
        _, fwd_bytes = roundtrip(fwd)
        _, rev_bytes = roundtrip(rev)
        assert fwd_bytes == rev_bytes

    def test_empty_inputs_rejected(self, toy_model, stopwords):
        with pytest.raises(BuildError):
            build_index(toy_model, [], False, stopwords)


class TestPersistence:
    def test_roundtrip_identity(self, toy_index):
        again, _ = roundtrip(toy_index)
        assert again == toy_index

    def test_bad_magic(self):
        with pytest.raises(IndexFormatError, match="magic"):
            load_index(io.BytesIO(b"XXXX" + b"\x00" * 40))

    def test_bad_version(self, toy_index):
        _, blob = roundtrip(toy_index)
        with pytest.raises(IndexFormatError, match="version"):
            load_index(io.BytesIO(blob[:4] + b"\x09" + blob[5:]))

    def test_truncation_reports_offset(self, toy_index):
        _, blob = roundtrip(toy_index)
        with pytest.raises(IndexCorruptionError) as err:
            load_index(io.BytesIO(blob[: len(blob) // 2]))
        assert err.value.offset is not None

    def test_flipped_byte_detected(self, toy_index):
        _, blob = roundtrip(toy_index)
        # flip one byte inside the vector payload; CRC must catch it
        pos = len(blob) - 10
        corrupt = blob[:pos] + bytes([blob[pos] ^ 0xFF]) + blob[pos + 1 :]
        with pytest.raises((IndexCorruptionError, IndexFormatError)):
            load_index(io.BytesIO(corrupt))

    def test_byte_count_matches_stream(self, toy_index):
        buf = io.BytesIO()
        n = save_index(toy_index, buf)
        assert n == len(buf.getvalue())

    def test_file_size_reference_scale(self):
        rng = np.random.default_rng(7)
        dim = 300
        entries = tuple(
            IndexEntry(
                f"P{i}",
                f"label {i}",
                (),
                rng.standard_normal(dim).astype(np.float32),
            )
            for i in range(1, 3324)
        )
        idx = PropertyIndex("m", dim, True, entries)
        buf = io.BytesIO()
        n = save_index(idx, buf)
        expected = 3323 * 300 * 4
        assert expected <= n <= expected * 1.10

    def test_debug_export_lines(self, toy_index):
        out = io.StringIO()
        debug_export(toy_index, out)
        lines = out.getvalue().splitlines()
        assert len(lines) == len(toy_index.entries)
        assert lines[0].startswith("P1\tend time\t")
        assert lines[-1].endswith("\t-")  # all-OOV entry


@st.composite
def random_indices(draw):
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    n = draw(st.integers(1, 12))
    dim = draw(st.integers(1, 16))
    entries = []
    for i in range(n):
        aliases = tuple(
            draw(st.text(min_size=1, max_size=8)) for _ in range(draw(st.integers(0, 3)))
        )
        present = draw(st.booleans())
        vec = rng.standard_normal(dim).astype(np.float32) if present else None
        entries.append(IndexEntry(f"P{i + 1}", draw(st.text(max_size=12)), aliases, vec))
    return PropertyIndex(
        model_id=draw(st.text(max_size=10)),
        dim=dim,
        use_description=draw(st.booleans()),
        entries=tuple(entries),
        built_at=draw(st.floats(0, 2e9, allow_nan=False)),
    )


class TestPersistenceProperty:
    @settings(max_examples=60, deadline=None)
    @given(random_indices())
    def test_random_roundtrip(self, idx):
        again, _ = roundtrip(idx)
        assert again == idx
