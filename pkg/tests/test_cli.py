# -*- coding: utf-8 -*-
#
# test_cli.py
# Description: tests of the command line interface over a tiny dataset
# -----------------------------------------------------------------------------

"""
tests of the command line interface over a tiny dataset
"""

import os

import numpy as np
import pytest

from cnngat import cnngat
from cnngat import cnngatconf
from cnngat import gatlayer
from cnngat import graph
from cnngat import mnist
from cnngat import spsreader
from cnngat import trainer

# small enough to train every variant in a second
TINY_SETTINGS = ["cnn_channels=2,3", "feature_dim=4", "gat_units=3,2", "heads=2", "neighbors=2",
                 "batch_size=8", "epochs=1", "graph=L"]


@pytest.fixture(scope="module")
def workspace(tmp_path_factory):
    """a directory with a tiny MNIST distribution, the dataset prepared from it,
       the label graphs and two trained runs of CNN and CNNGAT

    """

    root = tmp_path_factory.mktemp("cli")
    rng = np.random.default_rng(3)

    mnistdir = root / "mnist"
    mnistdir.mkdir()
    for prefix, count in (("train", 10), ("t10k", 3)):
        labels = np.repeat(np.arange(10), count)
        mnist.write_idx(str(mnistdir / "{0}-images-idx3-ubyte".format(prefix)),
                        rng.integers(0, 256, size=(len(labels), 28, 28)))
        mnist.write_idx(str(mnistdir / "{0}-labels-idx1-ubyte".format(prefix)), labels)

    paths = {name: str(root / name) for name in ("data", "graphs", "runs")}
    assert cnngat.main(["prepare", "--mnist-dir", str(mnistdir), "--out", paths['data'],
                        "--train-per-class", "8"]) == cnngat.EXIT_SUCCESS
    assert cnngat.main(["build-graph", "--setting", "L", "--data", paths['data'],
                        "--out", paths['graphs']]) == cnngat.EXIT_SUCCESS

    arguments = ["train", "--data", paths['data'], "--graphs", paths['graphs'],
                 "--out", paths['runs'], "--variant", "CNN", "--variant", "CNNGAT",
                 "--seed", "0", "--seed", "1"]
    for isetting in TINY_SETTINGS:
        arguments += ["--set", isetting]
    assert cnngat.main(arguments) == cnngat.EXIT_SUCCESS
    return paths


def run_dir(workspace, variant, seed):
    return os.path.join(workspace['runs'], "{0}-L-seed{1}".format(variant, seed))


# -- prepare and build-graph

def test_prepare(workspace):
    train, test = cnngat.load_splits(workspace['data'])
    assert len(train) == 24 and len(test) == 9
    rows = list(spsreader.SpsReader(os.path.join(workspace['data'], cnngat.MANIFEST_NAME),
                                    mnist.MANIFEST_HEADERS))
    assert len(rows) == 33
    with open(os.path.join(workspace['data'], cnngatconf.CONFIG_NAME)) as stream:
        settings = cnngatconf.parse_lines(stream, "dataset")
    assert settings['train_per_class'] == "8"


def test_prepare_is_deterministic(workspace, tmp_path):
    mnistdir = os.path.join(os.path.dirname(workspace['data']), "mnist")
    assert cnngat.main(["prepare", "--mnist-dir", mnistdir, "--out", str(tmp_path),
                        "--train-per-class", "8"]) == cnngat.EXIT_SUCCESS
    with open(os.path.join(workspace['data'], cnngat.MANIFEST_NAME), 'rb') as stream:
        first = stream.read()
    with open(os.path.join(str(tmp_path), cnngat.MANIFEST_NAME), 'rb') as stream:
        assert stream.read() == first


def test_prepare_without_labels(fake_mnist, tmp_path):
    (fake_mnist / "train-labels-idx1-ubyte").unlink()
    assert cnngat.main(["prepare", "--mnist-dir", str(fake_mnist),
                        "--out", str(tmp_path / "data")]) == cnngat.EXIT_USAGE


def test_label_graphs(workspace):
    train, test = cnngat.load_splits(workspace['data'])
    affinity = graph.AffinityGraph.load(cnngat.graph_filename(workspace['graphs'], "L", "train"))
    expected = graph.build_label_graph(train.get_labels())
    assert np.array_equal(affinity.get_edges(), expected.get_edges())

    combined = graph.AffinityGraph.load(cnngat.graph_filename(workspace['graphs'], "L", "all"))
    assert combined.get_num_vertices() == len(train) + len(test)
    assert os.path.isfile(os.path.join(workspace['graphs'], "graph-L-stats.csv"))


@pytest.mark.parametrize("setting", ["random", "theta"])
def test_evaluation_graph_keeps_the_train_edges(workspace, tmp_path, setting):
    assert cnngat.main(["build-graph", "--setting", setting, "--theta", "0.45",
                        "--data", workspace['data'], "--out", str(tmp_path)]) == cnngat.EXIT_SUCCESS
    train = graph.AffinityGraph.load(cnngat.graph_filename(str(tmp_path), setting, "train"))
    combined = graph.AffinityGraph.load(cnngat.graph_filename(str(tmp_path), setting, "all"))

    inside = [tuple(iedge) for iedge in combined.get_edges().tolist() if iedge[1] < 24]
    assert inside == [tuple(iedge) for iedge in train.get_edges().tolist()]


def test_meta_graph(tmp_path):
    metaname = tmp_path / "meta.csv"
    metaname.write_text("patient_id,gender,age\np1,M,40\np2,M,41\np3,F,50\n")
    outdir = tmp_path / "graphs"
    assert cnngat.main(["build-graph", "--setting", "meta", "--meta", str(metaname),
                        "--out", str(outdir)]) == cnngat.EXIT_SUCCESS
    affinity = graph.AffinityGraph.load(cnngat.graph_filename(str(outdir), "meta"))
    assert affinity.get_edges().tolist() == [[0, 1]]


def test_build_graph_without_data(tmp_path):
    assert cnngat.main(["build-graph", "--setting", "theta",
                        "--out", str(tmp_path)]) == cnngat.EXIT_USAGE


# -- train

def test_runs(workspace):
    for variant in ("CNN", "CNNGAT"):
        for seed in (0, 1):
            rundir = run_dir(workspace, variant, seed)
            assert os.path.isfile(os.path.join(rundir, trainer.CHECKPOINT_NAME))
            assert len(trainer.read_metrics(os.path.join(rundir, trainer.METRICS_NAME))) == 1
            spec = cnngatconf.ExperimentSpec.parse(os.path.join(rundir, cnngatconf.CONFIG_NAME))
            assert spec.get_config().variant == variant and spec.get_config().seed == seed
            assert spec.get_config().feature_dim == 4


def test_train_with_missing_graph(workspace, tmp_path):
    assert cnngat.main(["train", "--data", workspace['data'], "--graphs", str(tmp_path),
                        "--out", str(tmp_path / "runs"), "--variant", "CNNGAT",
                        "--set", "graph=theta", "--set", "epochs=0"]) == cnngat.EXIT_USAGE


def test_train_with_unknown_key(workspace, tmp_path):
    assert cnngat.main(["train", "--data", workspace['data'], "--graphs", workspace['graphs'],
                        "--out", str(tmp_path), "--set", "learning_rate=0.1"]) == cnngat.EXIT_USAGE


# -- eval

def test_eval(workspace, tmp_path):
    rundir = run_dir(workspace, "CNNGAT", 0)
    dumpname = str(tmp_path / "attention.csv")
    assert cnngat.main(["eval", "--run", rundir, "--data", workspace['data'],
                        "--graphs", workspace['graphs'],
                        "--dump-attention", dumpname]) == cnngat.EXIT_SUCCESS

    record = next(iter(spsreader.SpsReader(os.path.join(rundir, cnngat.ACCURACY_NAME),
                                           ["graph", "accuracy", "lowest"])))
    assert record['graph'] == "L"
    assert 0.0 <= float(record['accuracy']) <= 1.0
    # the first batch has eight main vertices, two heads and three slots each
    assert len(spsreader.SpsReader(dumpname, gatlayer.ATTENTION_HEADERS)) == 8 * 2 * 3


def test_eval_is_reproducible(workspace):
    rundir = run_dir(workspace, "CNNGAT", 1)
    accname = os.path.join(rundir, cnngat.ACCURACY_NAME)
    results = []
    for _ in range(2):
        assert cnngat.main(["eval", "--run", rundir, "--data", workspace['data'],
                            "--graphs", workspace['graphs']]) == cnngat.EXIT_SUCCESS
        results.append(next(iter(spsreader.SpsReader(accname, ["accuracy"])))['accuracy'])
    assert results[0] == results[1]


def test_eval_of_cnn_ignores_the_graph(workspace):
    rundir = run_dir(workspace, "CNN", 0)
    assert cnngat.main(["eval", "--run", rundir, "--data", workspace['data'],
                        "--graphs", workspace['graphs'], "--graph", "CL"]) == cnngat.EXIT_SUCCESS
    record = next(iter(spsreader.SpsReader(os.path.join(rundir, cnngat.ACCURACY_NAME), ["graph"])))
    assert record['graph'] == "L"


def test_eval_of_missing_run(workspace, tmp_path):
    assert cnngat.main(["eval", "--run", str(tmp_path / "nothing"), "--data", workspace['data'],
                        "--graphs", workspace['graphs']]) == cnngat.EXIT_USAGE


# -- occlusion and report

def test_occlusion_and_report(workspace, capsys):
    for variant in ("CNN", "CNNGAT"):
        for seed in (0, 1):
            assert cnngat.main(["occlusion", "--run", run_dir(workspace, variant, seed),
                                "--data", workspace['data'], "--graphs", workspace['graphs'],
                                "--count", "6", "--window", "7", "--stride", "7",
                                "--maps", "1"]) == cnngat.EXIT_SUCCESS

    rundir = run_dir(workspace, "CNNGAT", 0)
    rows = list(spsreader.SpsReader(os.path.join(rundir, cnngat.OCCLUSION_NAME),
                                    cnngat.OCCLUSION_HEADERS))
    assert len(rows) == 6
    assert all(24 <= int(irow['vertex']) < 33 for irow in rows)
    mapsdir = os.path.join(rundir, cnngat.MAPS_DIR)
    assert len([iname for iname in os.listdir(mapsdir) if iname.endswith(".pgm")]) == 1

    # the same images are selected for every run
    other = list(spsreader.SpsReader(os.path.join(run_dir(workspace, "CNN", 1),
                                                  cnngat.OCCLUSION_NAME), cnngat.OCCLUSION_HEADERS))
    assert [irow['vertex'] for irow in rows] == [irow['vertex'] for irow in other]

    capsys.readouterr()
    assert cnngat.main(["report", "--runs", workspace['runs'], "-x"]) == cnngat.EXIT_SUCCESS
    assert "CNNGAT" in capsys.readouterr().out

    report = list(spsreader.SpsReader(os.path.join(workspace['runs'], cnngat.REPORT_NAME),
                                      ["network", "affinity", "occ_p_value"]))
    assert [(irow['network'], irow['affinity']) for irow in report] == [("CNN", "L"),
                                                                        ("CNNGAT", "L")]
    assert os.path.isfile(os.path.join(workspace['runs'], "report.xlsx"))


def test_report_without_runs(tmp_path):
    assert cnngat.main(["report", "--runs", str(tmp_path)]) == cnngat.EXIT_USAGE


@pytest.mark.skipif(not os.environ.get("MNIST_DIR"),
                    reason="set MNIST_DIR to the directory of the MNIST idx files")
def test_smoke_on_mnist(tmp_path):
    paths = {name: str(tmp_path / name) for name in ("data", "graphs", "runs")}
    assert cnngat.main(["prepare", "--mnist-dir", os.environ["MNIST_DIR"], "--out", paths['data'],
                        "--train-per-class", "500", "--test-count", "300"]) == cnngat.EXIT_SUCCESS
    assert cnngat.main(["build-graph", "--setting", "theta", "--data", paths['data'],
                        "--out", paths['graphs']]) == cnngat.EXIT_SUCCESS
    assert cnngat.main(["train", "--data", paths['data'], "--graphs", paths['graphs'],
                        "--out", paths['runs'], "--variant", "CNNGAT",
                        "--set", "epochs=2"]) == cnngat.EXIT_SUCCESS

    rundir = os.path.join(paths['runs'], "CNNGAT-theta-seed0")
    assert cnngat.main(["eval", "--run", rundir, "--data", paths['data'],
                        "--graphs", paths['graphs']]) == cnngat.EXIT_SUCCESS
    record = next(iter(spsreader.SpsReader(os.path.join(rundir, cnngat.ACCURACY_NAME),
                                           ["accuracy"])))
    assert float(record['accuracy']) > 1 / 3
