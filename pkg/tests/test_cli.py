#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Tests for the orlicz-embedding command."""

import json

import pytest

from orlicz_embedding.cli import SEED_VARIABLE, demo_path, main


@pytest.fixture()
def suite(tmp_path):
    path = tmp_path / "suite.json"
    path.write_text(
        json.dumps(
            {"seed": 4, "experiments": [{"kind": "lemma4", "n": [2, 3], "trials": 2}]}
        )
    )
    return path


@pytest.fixture(autouse=True)
def no_seed_variable(monkeypatch, tmp_path):
    monkeypatch.delenv(SEED_VARIABLE, raising=False)
    # Keep options files in the working directory out of the way
    monkeypatch.chdir(tmp_path)


def read_seed(out_dir):
    return json.loads((out_dir / "suite.json").read_text())["seed"]


def test_run(suite, tmp_path):
    out_dir = tmp_path / "reports"
    assert main(["--out-dir", str(out_dir), "run", str(suite)]) == 0
    assert (out_dir / "lemma4.csv").exists()
    assert read_seed(out_dir) == 4


def test_check(suite):
    assert main(["check", str(suite)]) == 0


def test_config_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"experiments": [{"kind": "theorem1", "n": 0}]}))
    assert main(["run", str(path)]) == 2
    assert main(["check", str(path)]) == 2


def test_missing_file(tmp_path):
    assert main(["run", str(tmp_path / "missing.json")]) == 2


def test_seed_from_environment(suite, tmp_path, monkeypatch):
    monkeypatch.setenv(SEED_VARIABLE, "5")
    out_dir = tmp_path / "env"
    assert main(["--out-dir", str(out_dir), "run", str(suite)]) == 0
    assert read_seed(out_dir) == 5

    out_dir = tmp_path / "cli"
    assert main(["--seed", "7", "--out-dir", str(out_dir), "run", str(suite)]) == 0
    assert read_seed(out_dir) == 7


def test_options_file(suite, tmp_path):
    (tmp_path / "orlicz-embedding.ini").write_text("seed = 9\n")
    out_dir = tmp_path / "ini"
    assert main(["--out-dir", str(out_dir), "run", str(suite)]) == 0
    assert read_seed(out_dir) == 9


def test_overrides(suite, tmp_path):
    out_dir = tmp_path / "mc"
    args = ["--mode", "mc", "--samples", "500", "--out-dir", str(out_dir)]
    # Sampling noise may fail a tight bracket, but the run completes
    assert main(args + ["run", str(suite)]) in (0, 1)
    data = json.loads((out_dir / "lemma4.json").read_text())
    assert data["config"]["mode"] == "mc"
    assert data["config"]["samples"] == 500


def test_demo_is_valid():
    assert demo_path().exists()
    assert main(["check", str(demo_path())]) == 0
