"""
Tests for the time-series data module
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from core.exceptions import DataIOError, DatasetError, InvalidArgumentError, ScalerFitError
from timeseries import (
    Dataset,
    MinMaxScaler,
    SyntheticConfig,
    TIME_FEATURES,
    clearsky_curve,
    embed_time,
    fill_missing_zeros,
    load_csv,
    make_windows,
    save_csv,
    scale_dataset,
    scaler_fit,
    select_features,
    single_station_features,
    split_by_year,
    suggest_split_years,
    synthesize_dataset,
    time_embeddings,
    window_count,
)
from timeseries.solar import clearsky_from_elevation, solar_elevation
from timeseries.synthetic import hourly_timestamps, lagged
from tests.conftest import make_dataset


def hour_stamp(text):
    return int(np.datetime64(text, "h").astype(np.int64))


class TestEmbedTime:
    """Test cyclic time embedding"""

    @pytest.mark.parametrize("t, expected", [
        (0, (0.0, 1.0)),
        (6, (1.0, 0.0)),
        (12, (0.0, -1.0)),
    ])
    def test_hour_of_day(self, t, expected):
        s, c = embed_time(t, 24)
        assert s == pytest.approx(expected[0], abs=1e-12)
        assert c == pytest.approx(expected[1], abs=1e-12)

    @pytest.mark.parametrize("period", [0, -24])
    def test_non_positive_period(self, period):
        with pytest.raises(InvalidArgumentError):
            embed_time(3, period)

    @given(st.floats(-1e4, 1e4), st.floats(0.5, 1000.0))
    def test_unit_circle(self, t, period):
        s, c = embed_time(t, period)
        assert abs(s * s + c * c - 1.0) < 1e-12

    def test_time_embeddings_shape(self):
        stamps = hourly_timestamps(2017, 1)[:100]
        emb = time_embeddings(stamps)
        assert emb.shape == (100, len(TIME_FEATURES))
        for k in range(0, 6, 2):
            np.testing.assert_allclose(emb[:, k] ** 2 + emb[:, k + 1] ** 2, 1.0, atol=1e-12)


class TestClearSky:
    """Test the analytic clear-sky curve"""

    def test_winter_midnight_is_dark(self):
        assert clearsky_curve(hour_stamp("2017-12-21T00"), 60.0) == 0.0

    def test_zero_elevation(self):
        assert clearsky_from_elevation(0.0) == 0.0
        assert clearsky_from_elevation(-10.0) == 0.0

    def test_summer_noon_range(self):
        value = clearsky_curve(hour_stamp("2017-06-21T12"), 60.0)
        assert 700.0 <= value <= 1000.0

    def test_increasing_in_elevation(self):
        elevations = np.linspace(0.5, 90.0, 200)
        values = clearsky_from_elevation(elevations)
        assert np.all(np.diff(values) > 0)

    def test_non_negative_over_year(self):
        stamps = hourly_timestamps(2017, 1)
        values = clearsky_curve(stamps, 60.0)
        assert np.all(values >= 0.0)
        # polar night latitude: dark on the winter solstice
        assert np.all(clearsky_curve(stamps[8496:8520], 80.0) == 0.0)

    def test_invalid_latitude(self):
        with pytest.raises(InvalidArgumentError):
            solar_elevation(hour_stamp("2017-06-21T12"), 120.0)


class TestSyntheticDataset:
    """Test the synthetic generator"""

    def test_leap_day_removed(self, synthetic_dataset):
        assert len(synthetic_dataset) == 3 * 8760
        feb29 = hour_stamp("2016-02-29T12")
        assert synthetic_dataset.find_timestamp(feb29) is None

    def test_target_bounded_by_clear_sky(self, synthetic_dataset):
        assert np.all(synthetic_dataset.target >= 0.0)
        assert np.all(synthetic_dataset.target <= synthetic_dataset.clear_sky + 1e-12)

    def test_cloudless_degenerate_case(self):
        ds = synthesize_dataset(SyntheticConfig(year_count=1, cloud_autocorrelation=0.0, cloud_floor=1.0, seed=1))
        np.testing.assert_array_equal(ds.target, ds.clear_sky)

    def test_deterministic(self):
        a = synthesize_dataset(SyntheticConfig(year_count=1, seed=11))
        b = synthesize_dataset(SyntheticConfig(year_count=1, seed=11))
        np.testing.assert_array_equal(a.features, b.features)
        np.testing.assert_array_equal(a.target, b.target)

    def test_seed_changes_clouds(self):
        a = synthesize_dataset(SyntheticConfig(year_count=1, seed=1))
        b = synthesize_dataset(SyntheticConfig(year_count=1, seed=2))
        assert not np.array_equal(a.target, b.target)

    @pytest.mark.parametrize("overrides", [
        {"latitude": 120.0},
        {"year_count": 0},
        {"cloud_autocorrelation": 1.0},
        {"cloud_floor": 0.0},
    ])
    def test_invalid_config(self, overrides):
        with pytest.raises(InvalidArgumentError):
            synthesize_dataset(SyntheticConfig(**overrides))

    def test_lag_is_missing_across_gaps(self):
        stamps = np.array([0, 1, 2, 30, 31], dtype=np.int64)
        values = np.arange(5, dtype=float)
        out = lagged(values, stamps, 29)
        assert np.isnan(out[:3]).all()
        assert out[3] == 1.0
        assert out[4] == 2.0


class TestDataset:
    """Test dataset invariants"""

    def test_length_mismatch(self):
        with pytest.raises(DatasetError):
            Dataset(timestamps=np.arange(3), features=np.zeros((2, 1)), target=np.zeros(3), clear_sky=np.zeros(3))

    def test_unsorted_timestamps(self):
        with pytest.raises(DatasetError):
            Dataset(timestamps=np.array([0, 2, 1]), features=np.zeros((3, 1)), target=np.zeros(3),
                    clear_sky=np.zeros(3))

    def test_read_only(self, small_dataset):
        with pytest.raises(ValueError):
            small_dataset.target[0] = 1.0

    def test_records_roundtrip(self, small_dataset):
        rebuilt = Dataset.from_records(small_dataset.records(), small_dataset.feature_names)
        np.testing.assert_array_equal(rebuilt.features, small_dataset.features)
        np.testing.assert_array_equal(rebuilt.timestamps, small_dataset.timestamps)

    def test_segments(self):
        ds = make_dataset(10).subset(np.r_[0:4, 6:10])
        assert ds.segments() == [(0, 4), (4, 8)]


class TestFillMissing:
    """Test zero filling"""

    def test_array(self):
        np.testing.assert_array_equal(fill_missing_zeros(np.array([1.0, np.nan, 3.0])), [1.0, 0.0, 3.0])

    def test_all_missing_channel(self, small_dataset):
        features = np.array(small_dataset.features)
        features[:, 1] = np.nan
        filled = fill_missing_zeros(small_dataset.replace(features=features))
        assert not filled.has_missing()
        assert np.all(filled.features[:, 1] == 0.0)

    def test_no_missing_is_identity(self, small_dataset):
        assert fill_missing_zeros(small_dataset) is small_dataset


class TestMinMaxScaler:
    """Test min-max scaling"""

    def test_midpoint_and_offset(self):
        scaler = MinMaxScaler(offset=1e-6).fit(np.array([0.0, 100.0]))
        assert scaler.apply(50.0) == pytest.approx(0.5 + 1e-6, abs=1e-15)
        assert scaler.apply(0.0) == pytest.approx(1e-6, abs=1e-15)
        assert scaler.apply(0.0) > 0.0

    def test_constant_channel(self):
        values = np.column_stack([np.arange(5.0), np.full(5, 2.0)])
        with pytest.raises(ScalerFitError) as err:
            MinMaxScaler().fit(values, ("ok", "flat"))
        assert err.value.channel == "flat"

    @given(st.floats(min_value=-500.0, max_value=1500.0, allow_nan=False))
    @settings(max_examples=200)
    def test_roundtrip(self, value):
        scaler = MinMaxScaler().fit(np.array([-500.0, 1500.0]))
        assert scaler.invert(scaler.apply(value)) == pytest.approx(value, rel=1e-9, abs=1e-9)

    def test_range(self, small_dataset):
        fs, ts = scaler_fit(small_dataset)
        scaled = fs.apply(small_dataset.features)
        assert scaled.min() == pytest.approx(fs.offset)
        assert scaled.max() == pytest.approx(1.0 + fs.offset)
        assert ts.channels == ("target",)

    def test_dict_roundtrip(self, small_dataset):
        fs, _ = scaler_fit(small_dataset)
        again = MinMaxScaler.from_dict(fs.to_dict())
        np.testing.assert_array_equal(again.apply(small_dataset.features), fs.apply(small_dataset.features))

    def test_scale_dataset_uses_target_scaler_for_clear_sky(self, small_dataset):
        fs, ts = scaler_fit(small_dataset)
        scaled = scale_dataset(small_dataset, fs, ts)
        np.testing.assert_allclose(scaled.clear_sky, ts.apply(small_dataset.clear_sky))
        np.testing.assert_allclose(scaled.target, ts.apply(small_dataset.target))

    def test_scale_dataset_channel_mismatch(self, small_dataset):
        fs, ts = scaler_fit(small_dataset)
        renamed = small_dataset.replace(feature_names=("a", "b"))
        with pytest.raises(DatasetError):
            scale_dataset(renamed, fs, ts)


class TestWindows:
    """Test window construction"""

    @pytest.mark.parametrize("length, expected", [(108, 1), (109, 2), (180, 73)])
    def test_count(self, length, expected):
        batch = make_windows(make_dataset(length), 72, 36)
        assert len(batch) == expected
        assert window_count(length, 72, 36) == expected

    def test_stride(self):
        batch = make_windows(make_dataset(200), 72, 36, stride=10)
        assert len(batch) == (200 - 108) // 10 + 1

    def test_too_short(self):
        with pytest.raises(InvalidArgumentError, match="108"):
            make_windows(make_dataset(107), 72, 36)

    def test_alignment(self):
        n = 150
        stamps = np.arange(1000, 1000 + n, dtype=np.int64)
        ds = Dataset(timestamps=stamps, features=stamps.astype(float).reshape(-1, 1),
                     target=stamps + 0.5, clear_sky=np.ones(n), feature_names=("t",))
        batch = make_windows(ds, 10, 5)
        np.testing.assert_array_equal(batch.inputs[:, -1, 0], batch.origins)
        np.testing.assert_array_equal(batch.targets, batch.target_hours() + 0.5)
        # no target hour ever appears in its input window
        assert np.all(batch.inputs[:, :, 0].max(axis=1) < batch.targets.min(axis=1))

    def test_windows_skip_leap_gap(self):
        stamps = hourly_timestamps(2016, 1)
        ds = Dataset(timestamps=stamps, features=stamps.astype(float).reshape(-1, 1),
                     target=stamps.astype(float), clear_sky=np.ones(len(stamps)), feature_names=("t",))
        batch = make_windows(ds, 72, 36, stride=24)
        hours = np.concatenate([batch.inputs[:, :, 0], batch.targets], axis=1)
        assert np.all(np.diff(hours, axis=1) == 1.0)


class TestSplits:
    """Test year-based splits"""

    def test_partition(self, five_year_dataset):
        train, val, test = split_by_year(five_year_dataset, 2016, 2017)
        assert len(train) + len(val) + len(test) == len(five_year_dataset)
        assert set(np.unique(train.years())) == {2018, 2019, 2020}
        assert set(np.unique(test.years())) == {2016}

    def test_windows_stay_inside_split(self, five_year_dataset):
        train, _, _ = split_by_year(five_year_dataset, 2018, 2017)
        batch = make_windows(train, 72, 36, stride=48)
        inside = np.isin(batch.target_hours(), train.timestamps)
        assert inside.all()

    def test_overlapping_years(self, five_year_dataset):
        with pytest.raises(InvalidArgumentError):
            split_by_year(five_year_dataset, 2017, 2017)

    def test_too_few_years(self, synthetic_dataset):
        two_years = synthetic_dataset.subset(synthetic_dataset.years() < 2018)
        with pytest.raises(InvalidArgumentError):
            split_by_year(two_years, 2016, 2017)

    def test_suggest_years(self, five_year_dataset):
        test_year, val_year = suggest_split_years(five_year_dataset)
        assert test_year != val_year
        assert {test_year, val_year} <= set(range(2016, 2021))


class TestFeatureSelection:
    """Test column selection for the single-station baseline"""

    def test_single_station_features(self, synthetic_dataset):
        names = single_station_features(synthetic_dataset)
        assert names == ("ghi",) + TIME_FEATURES
        view = select_features(synthetic_dataset, names)
        assert view.num_features == 7
        np.testing.assert_array_equal(view.features[:, 0], synthetic_dataset.features[:, 0])

    def test_unknown_feature(self, small_dataset):
        with pytest.raises(DatasetError):
            select_features(small_dataset, ["nope"])


class TestCsvIO:
    """Test CSV ingestion and export"""

    def test_roundtrip(self, temp_dir, small_dataset):
        features = np.array(small_dataset.features)
        features[3, 1] = np.nan
        ds = small_dataset.replace(features=features)
        path = save_csv(ds, temp_dir / "data.csv")
        loaded = load_csv(path)
        assert loaded.feature_names == ds.feature_names
        np.testing.assert_array_equal(loaded.timestamps, ds.timestamps)
        np.testing.assert_allclose(loaded.features, ds.features, equal_nan=True)
        assert path.read_text().splitlines()[0].startswith("timestamp,target,clear_sky,")

    def test_missing_file(self, temp_dir):
        with pytest.raises(DataIOError):
            load_csv(temp_dir / "absent.csv")

    def test_bad_header(self, temp_dir):
        path = temp_dir / "bad.csv"
        path.write_text("time,target,clear_sky,x\n2017-01-01T00:00:00Z,1,2,3\n")
        with pytest.raises(DatasetError):
            load_csv(path)

    def test_fractional_hour(self, temp_dir):
        path = temp_dir / "frac.csv"
        path.write_text("timestamp,target,clear_sky,x\n2017-01-01T00:30:00Z,1,2,3\n")
        with pytest.raises(DatasetError):
            load_csv(path)
