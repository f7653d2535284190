"""Estimator surface: parameter contract, fitting, prediction, validation."""

from __future__ import annotations

import numpy as np
import pytest
from helpers import partition_of

from ufshuffle import (
    AlternatingStarContraction,
    NotFittedError,
    UnionFindShuffle,
    sequential_components,
)
from ufshuffle._validation import check_edge_array, check_node_ids

EDGES = [(1, 2), (2, 3), (4, 5), (9, 9)]


class TestParamContract:
    def test_get_params_round_trips_constructor_args(self):
        est = UnionFindShuffle(n_partitions=4, election="max", n_workers=2)
        params = est.get_params()
        assert params["n_partitions"] == 4
        assert params["election"] == "max"
        rebuilt = UnionFindShuffle(**params)
        assert rebuilt.get_params() == params

    def test_set_params_returns_self(self):
        est = UnionFindShuffle()
        assert est.set_params(n_partitions=3) is est
        assert est.n_partitions == 3

    def test_set_params_rejects_unknown(self):
        with pytest.raises(ValueError, match="invalid parameter"):
            UnionFindShuffle().set_params(bogus=1)

    def test_sklearn_clone_compatibility(self):
        sklearn_base = pytest.importorskip("sklearn.base")
        est = UnionFindShuffle(n_partitions=5)
        cloned = sklearn_base.clone(est)
        assert cloned is not est
        assert cloned.get_params() == est.get_params()

    def test_repr_shows_params(self):
        assert "n_partitions=4" in repr(UnionFindShuffle(n_partitions=4))


class TestFit:
    def test_fitted_attributes(self):
        est = UnionFindShuffle(n_partitions=2).fit(EDGES)
        assert est.components_ == {1: 1, 2: 1, 3: 1, 4: 4, 5: 4, 9: 9}
        assert est.nodes_.tolist() == [1, 2, 3, 4, 5, 9]
        assert est.labels_.tolist() == [1, 1, 1, 4, 4, 9]
        assert est.n_components_ == 3
        assert est.metrics_.input_edges == 4

    def test_fit_accepts_numpy(self):
        X = np.array(EDGES[:3], dtype=np.int64)
        est = UnionFindShuffle(n_partitions=2).fit(X)
        assert est.n_components_ == 2

    def test_fit_empty(self):
        est = UnionFindShuffle().fit(np.empty((0, 2), dtype=np.int64))
        assert est.components_ == {}
        assert est.n_components_ == 0

    def test_predict_maps_nodes_to_components(self):
        est = UnionFindShuffle(n_partitions=2).fit(EDGES)
        assert est.predict([3, 5, 9]).tolist() == [1, 4, 9]

    def test_predict_unknown_node_raises(self):
        est = UnionFindShuffle().fit(EDGES)
        with pytest.raises(ValueError, match="unknown node"):
            est.predict([42])

    def test_predict_before_fit_raises(self):
        with pytest.raises(NotFittedError):
            UnionFindShuffle().predict([1])

    def test_fit_predict_returns_labels(self):
        labels = UnionFindShuffle(n_partitions=2).fit_predict(EDGES)
        assert labels.tolist() == [1, 1, 1, 4, 4, 9]

    def test_refit_replaces_state(self):
        est = UnionFindShuffle().fit(EDGES)
        est.fit([(10, 11)])
        assert est.components_ == {10: 10, 11: 10}


class TestBaselineEstimator:
    def test_agrees_with_engine_partition(self):
        a = UnionFindShuffle(n_partitions=4).fit(EDGES)
        b = AlternatingStarContraction().fit(EDGES)
        assert partition_of(a.components_) == partition_of(b.components_)
        assert b.components_ == sequential_components(EDGES)

    def test_param_contract(self):
        est = AlternatingStarContraction(max_rounds=12)
        assert est.get_params() == {"max_rounds": 12}


class TestValidation:
    def test_list_input_normalized(self):
        assert check_edge_array([(1, 2), [3, 4]]) == [(1, 2), (3, 4)]

    def test_numpy_passthrough(self):
        X = np.array([[1, 2]], dtype=np.uint64)
        assert check_edge_array(X) is X

    def test_wrong_numpy_shape(self):
        with pytest.raises(ValueError, match="shape"):
            check_edge_array(np.zeros((3, 3), dtype=np.int64))

    def test_float_dtype_rejected(self):
        with pytest.raises(ValueError, match="integer dtype"):
            check_edge_array(np.zeros((2, 2)))

    def test_negative_ids_rejected(self):
        with pytest.raises(ValueError, match="non-negative"):
            check_edge_array(np.array([[-1, 2]], dtype=np.int64))
        with pytest.raises(ValueError):
            check_edge_array([(-1, 2)])

    def test_non_pair_row_rejected(self):
        with pytest.raises(ValueError, match="pair"):
            check_edge_array([(1, 2, 3)])

    def test_bool_and_float_scalars_rejected(self):
        with pytest.raises(ValueError):
            check_edge_array([(True, 2)])
        with pytest.raises(ValueError):
            check_edge_array([(1.5, 2)])

    def test_over_64_bit_rejected(self):
        with pytest.raises(ValueError, match="64-bit"):
            check_edge_array([(2 ** 64, 0)])

    def test_scalar_input_rejected(self):
        with pytest.raises(ValueError):
            check_edge_array(42)

    def test_node_ids_flat_sequence(self):
        assert check_node_ids(np.array([1, 2], dtype=np.uint64)) == [1, 2]
        with pytest.raises(ValueError):
            check_node_ids(np.zeros((2, 2), dtype=np.int64))
