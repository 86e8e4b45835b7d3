"""Contract tests: sidecar outputs feed the extraction pipeline unchanged."""

from __future__ import annotations

import subprocess
from pathlib import Path

import pytest

from narrastyle.conllu import parse_conllu, parse_conllu_file
from narrastyle.pipeline import extract_document
from narrastyle.semantic import (
    compute_semantic_overlap,
    read_embeddings,
    read_figurative,
    verify_figurative_records,
)

SIDECAR = Path(__file__).resolve().parents[1] / "sidecar" / "dist" / "cli.js"
SEMANTIC_IDS = {"avg_semantic_overlap", "tfi_per_sent", "tfi_per_1000"}

pytestmark = pytest.mark.skipif(not SIDECAR.exists(), reason="sidecar not built")


def run_sidecar(*argv: str) -> subprocess.CompletedProcess[str]:
    return subprocess.run(["node", str(SIDECAR), *argv],
                          capture_output=True, text=True)


def make_outputs(docs_dir, tmp_path, doc_id):
    src = str(docs_dir / f"{doc_id}.conllu")
    emb = tmp_path / f"{doc_id}.emb.jsonl"
    fig = tmp_path / f"{doc_id}.fig.jsonl"
    for command, out in (("embed", emb), ("figurative", fig)):
        proc = run_sidecar(command, "--in", src, "--out", str(out),
                           "--doc-id", doc_id)
        assert proc.returncode == 0, proc.stderr
    return emb, fig


def test_embed_covers_every_sentence(docs_dir, tmp_path):
    emb, _ = make_outputs(docs_dir, tmp_path, "m01")
    doc = parse_conllu_file(str(docs_dir / "m01.conllu"), "m01")
    embeddings = read_embeddings(emb)
    assert [e.sent_index for e in embeddings] == list(range(doc.sentence_count))
    assert all(e.doc_id == "m01" for e in embeddings)
    dims = {len(e.vector) for e in embeddings}
    assert dims == {128}


def test_figurative_flags_verify_clean(docs_dir, tmp_path):
    for doc_id in ("m01", "m02", "m05"):
        _, fig = make_outputs(docs_dir, tmp_path, doc_id)
        records = read_figurative(fig)
        assert verify_figurative_records(records) == []


def test_identical_adjacent_sentences_overlap_one(tmp_path):
    line = "1\tRain\train\tNOUN\t_\t_\t2\tnsubj\t_\t_\n" \
           "2\tfell\tfall\tVERB\t_\t_\t0\troot\t_\t_\n"
    source = tmp_path / "twin.conllu"
    source.write_text(line + "\n" + line + "\n")
    out = tmp_path / "twin.emb.jsonl"
    proc = run_sidecar("embed", "--in", str(source), "--out", str(out),
                       "--doc-id", "twin")
    assert proc.returncode == 0, proc.stderr
    doc = parse_conllu((line + "\n" + line + "\n"), "twin")
    overlap = compute_semantic_overlap(doc, read_embeddings(out))
    assert overlap == pytest.approx(1.0, abs=1e-9)


def test_extract_document_consumes_sidecar_outputs(docs_dir, tmp_path, mini_res):
    emb, fig = make_outputs(docs_dir, tmp_path, "m05")
    doc = parse_conllu_file(str(docs_dir / "m05.conllu"), "m05")
    vector = extract_document(doc, mini_res,
                              embeddings=read_embeddings(emb),
                              figurative=read_figurative(fig))
    assert not (SEMANTIC_IDS & vector.missing)
    by_id = dict(zip(vector.feature_ids, vector.values))
    assert -1.0 <= by_id["avg_semantic_overlap"] <= 1.0
    assert by_id["tfi_per_sent"] >= 0.0


def test_outputs_are_deterministic(docs_dir, tmp_path):
    first = tmp_path / "one"
    second = tmp_path / "two"
    first.mkdir()
    second.mkdir()
    a_emb, a_fig = make_outputs(docs_dir, first, "m02")
    b_emb, b_fig = make_outputs(docs_dir, second, "m02")
    assert a_emb.read_bytes() == b_emb.read_bytes()
    assert a_fig.read_bytes() == b_fig.read_bytes()


def test_m12_subject_verb_relations(docs_dir, tmp_path):
    _, fig = make_outputs(docs_dir, tmp_path, "m12")
    records = read_figurative(fig)
    assert [r.sent_index for r in records] == [0, 1, 2]
    assert {r.relation_type for r in records} == {"subj_verb"}
    assert {r.target_token_index for r in records} == {3}


def test_exit_codes(docs_dir, tmp_path):
    out = str(tmp_path / "x.jsonl")
    src = str(docs_dir / "m01.conllu")
    assert run_sidecar("embed", "--in", str(tmp_path / "nope.conllu"),
                       "--out", out).returncode == 1
    assert run_sidecar("embed", "--in", src, "--out", out,
                       "--volume", "11").returncode == 2
    bad_cfg = tmp_path / "bad.json"
    bad_cfg.write_text('{"schema_version": 1, "colour": "red"}')
    assert run_sidecar("embed", "--in", src, "--out", out,
                       "--config", str(bad_cfg)).returncode == 2
