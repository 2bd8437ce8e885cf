//! Embedded golden-value suite: the worked 3x3 example, the mapping
//! cardinalities, and the textbook split ratios, checked against frozen
//! constants. Prints one line per check; exits nonzero if any fails.

use lbpkit::learning::{split_dataset, LabeledDataset};
use lbpkit::lbp::{
    basic_lbp, build_code_mapping, lbp_histogram, rotate_bits, MappingKind,
};
use lbpkit::{median_of, GrayImage};

type Check = (&'static str, fn() -> Result<(), String>);

fn worked_patch() -> GrayImage {
    GrayImage::new(3, 3, vec![6.0, 5.0, 2.0, 7.0, 6.0, 1.0, 9.0, 8.0, 7.0]).unwrap()
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn check_basic_code_and_contrast() -> Result<(), String> {
    let (codes, stats) = basic_lbp(&worked_patch()).map_err(|e| e.to_string())?;
    expect("code", codes.codes()[0], 241)?;
    let contrast = stats[0].contrast;
    if (contrast - 71.0 / 15.0).abs() > 1e-9 {
        return Err(format!("contrast: got {contrast}, want 4.7333..."));
    }
    Ok(())
}

fn check_median_neighborhood() -> Result<(), String> {
    let m = median_of(&[9.0, 8.0, 7.0, 7.0, 6.0, 6.0, 5.0, 2.0, 1.0]).map_err(|e| e.to_string())?;
    expect("median", m, 6.0)
}

fn check_full_histogram_lengths() -> Result<(), String> {
    let m8 = build_code_mapping(MappingKind::Full, 8).map_err(|e| e.to_string())?;
    expect("bins for 8 samples", m8.bin_count(), 256)?;
    let m16 = build_code_mapping(MappingKind::Full, 16).map_err(|e| e.to_string())?;
    expect("bins for 16 samples", m16.bin_count(), 65_536)
}

fn check_mapping_cardinalities() -> Result<(), String> {
    let u2 = build_code_mapping(MappingKind::Uniform, 8).map_err(|e| e.to_string())?;
    expect("u2 bins", u2.bin_count(), 59)?;
    let uniform = u2
        .table()
        .expect("dense table")
        .iter()
        .filter(|&&b| (b as usize) < u2.bin_count() - 1)
        .count();
    expect("uniform codes", uniform, 58)?;
    let ri = build_code_mapping(MappingKind::RotationInvariant, 8).map_err(|e| e.to_string())?;
    expect("ri bins", ri.bin_count(), 36)?;
    let riu2 =
        build_code_mapping(MappingKind::UniformRotationInvariant, 8).map_err(|e| e.to_string())?;
    expect("riu2 bins", riu2.bin_count(), 10)
}

fn check_one_hot_histogram() -> Result<(), String> {
    let (codes, _) = basic_lbp(&worked_patch()).map_err(|e| e.to_string())?;
    let mapping = build_code_mapping(MappingKind::Full, 8).map_err(|e| e.to_string())?;
    let hist = lbp_histogram(&codes, &mapping, false).map_err(|e| e.to_string())?;
    expect("total mass", hist.values.iter().sum::<f64>(), 1.0)?;
    expect("bin 241", hist.values[241], 1.0)
}

fn check_split_ratios() -> Result<(), String> {
    let data = LabeledDataset::new(
        1,
        (0..100).map(|i| vec![i as f64]).collect(),
        (0..100).map(|i| format!("s{i}")).collect(),
    )
    .map_err(|e| e.to_string())?;
    let split = split_dataset(&data, [0.5, 0.25, 0.25], 42).map_err(|e| e.to_string())?;
    expect("train", split.train.len(), 50)?;
    expect("validation", split.validation.len(), 25)?;
    expect("test", split.test.len(), 25)
}

fn check_rotation_orbits() -> Result<(), String> {
    let ri = build_code_mapping(MappingKind::RotationInvariant, 8).map_err(|e| e.to_string())?;
    for code in 0u32..256 {
        for k in 0..8 {
            if ri.bin_of(rotate_bits(code, k, 8)) != ri.bin_of(code) {
                return Err(format!("orbit of code {code} broken at rotation {k}"));
            }
        }
    }
    Ok(())
}

pub fn run() -> Result<(), String> {
    let checks: &[Check] = &[
        ("3x3 worked example: code 241, contrast 4.7333", check_basic_code_and_contrast),
        ("median of the worked 3x3 neighborhood is 6", check_median_neighborhood),
        ("full histogram lengths 256 and 65536", check_full_histogram_lengths),
        ("mapping cardinalities 59 / 58 / 36 / 10", check_mapping_cardinalities),
        ("worked example histogram is one-hot at bin 241", check_one_hot_histogram),
        ("100 samples split 50:25:25", check_split_ratios),
        ("orbit bins are rotation-stable over all 256 x 8 pairs", check_rotation_orbits),
    ];

    let mut failures = 0usize;
    for (name, check) in checks {
        match check() {
            Ok(()) => println!("ok - {name}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL - {name}: {detail}");
            }
        }
    }
    println!("selftest: {} passed, {failures} failed", checks.len() - failures);
    if failures == 0 {
        Ok(())
    } else {
        Err(format!("{failures} selftest check(s) failed"))
    }
}
