//! Acceptance suite: one test per shipping criterion, golden values and
//! independent brute-force oracles included. Run with
//! `cargo test -p lbpkit-cli --test acceptance` (add `-- --nocapture` to
//! see the measured timings and accuracies).

use lbpkit::eval::{roc_curve, ScoredSample};
use lbpkit::learning::{
    euclidean_distance_matrix, histogram_distance, kmeans_fit, kmeans_fit_with_init, knn_classify,
    mds_embed, DistanceKind, KMeansModel, KnnConfig, LabeledDataset,
};
use lbpkit::lbp::{
    basic_lbp, build_code_mapping, generalized_lbp, grid_histogram, lbp_histogram, lbp_top,
    lbp_histogram as plain_histogram, ring_samples, rotate_bits, MappingKind, SamplingSpec,
};
use lbpkit::rng::Lcg;
use lbpkit::{GrayImage, VideoVolume};
use std::time::Instant;

fn worked_patch() -> GrayImage {
    GrayImage::new(3, 3, vec![6.0, 5.0, 2.0, 7.0, 6.0, 1.0, 9.0, 8.0, 7.0]).unwrap()
}

fn random_image(rng: &mut Lcg, width: usize, height: usize) -> GrayImage {
    let pixels = (0..width * height)
        .map(|_| rng.next_below(256) as f64)
        .collect();
    GrayImage::new(width, height, pixels).unwrap()
}

// ---- criterion 1 --------------------------------------------------------

#[test]
fn c01_basic_code_and_contrast_golden() {
    let (codes, stats) = basic_lbp(&worked_patch()).unwrap();
    assert_eq!(codes.codes(), &[241], "criterion 1: code must be exactly 241");
    let contrast = stats[0].contrast;
    assert!(
        (contrast - 4.73333).abs() <= 0.001,
        "criterion 1: contrast {contrast} must be 4.73333 +/- 0.001"
    );
}

// ---- criterion 2 --------------------------------------------------------

#[test]
fn c02_full_histogram_lengths() {
    let image = GrayImage::from_fn(10, 10, |x, y| ((x * 13 + y * 7) % 29) as f64).unwrap();

    let mapping8 = build_code_mapping(MappingKind::Full, 8).unwrap();
    let codes8 = generalized_lbp(&image, SamplingSpec::new(8, 1.0).unwrap()).unwrap();
    let hist8 = lbp_histogram(&codes8, &mapping8, false).unwrap();
    assert_eq!(hist8.len(), 256);

    let mapping16 = build_code_mapping(MappingKind::Full, 16).unwrap();
    let codes16 = generalized_lbp(&image, SamplingSpec::new(16, 2.0).unwrap()).unwrap();
    let hist16 = lbp_histogram(&codes16, &mapping16, false).unwrap();
    assert_eq!(hist16.len(), 65_536);
    assert!(codes16.codes().iter().all(|&c| c <= 65_535));
}

// ---- criterion 3 --------------------------------------------------------

// Independent enumerator written from the definitions, using bit vectors
// rather than the library's shift arithmetic.
mod enumerator {
    pub fn bits(code: u32) -> Vec<bool> {
        (0..8).map(|i| code >> i & 1 == 1).collect()
    }

    pub fn transitions(code: u32) -> usize {
        let b = bits(code);
        (0..8).filter(|&i| b[i] != b[(i + 1) % 8]).count()
    }

    pub fn rotations(code: u32) -> Vec<u32> {
        let b = bits(code);
        (0..8)
            .map(|k| {
                let mut out = 0u32;
                for (i, _) in b.iter().enumerate() {
                    if b[(i + k) % 8] {
                        out |= 1 << i;
                    }
                }
                out
            })
            .collect()
    }

    /// Class key under each mapping kind, straight from the definitions.
    pub fn class_key(kind: &str, code: u32) -> u64 {
        match kind {
            "full" => code as u64,
            "u2" => {
                if transitions(code) <= 2 {
                    code as u64
                } else {
                    1 << 32
                }
            }
            "ri" => *rotations(code).iter().min().unwrap() as u64,
            "riu2" => {
                if transitions(code) <= 2 {
                    code.count_ones() as u64
                } else {
                    1 << 32
                }
            }
            _ => unreachable!(),
        }
    }
}

#[test]
fn c03_mapping_enumerations_match_brute_force() {
    let uniform_count = (0u32..256).filter(|&c| enumerator::transitions(c) <= 2).count();
    assert_eq!(uniform_count, 58, "criterion 3: 58 uniform codes");

    let orbit_count = {
        let mut reps: Vec<u32> = (0..256u32)
            .map(|c| *enumerator::rotations(c).iter().min().unwrap())
            .collect();
        reps.sort_unstable();
        reps.dedup();
        reps.len()
    };
    assert_eq!(orbit_count, 36, "criterion 3: 36 rotation orbits");

    for (kind, name, bins) in [
        (MappingKind::Uniform, "u2", 59),
        (MappingKind::RotationInvariant, "ri", 36),
        (MappingKind::UniformRotationInvariant, "riu2", 10),
        (MappingKind::Full, "full", 256),
    ] {
        let mapping = build_code_mapping(kind, 8).unwrap();
        assert_eq!(mapping.bin_count(), bins, "criterion 3: {name} bin count");
        // Same partition of the 256 codes as the enumerator's classes.
        for a in 0u32..256 {
            for b in a..256 {
                let same_impl = mapping.bin_of(a) == mapping.bin_of(b);
                let same_oracle =
                    enumerator::class_key(name, a) == enumerator::class_key(name, b);
                assert_eq!(same_impl, same_oracle, "{name}: codes {a} vs {b}");
            }
        }
    }
}

// ---- criterion 4 --------------------------------------------------------

fn increasing_lut(rng: &mut Lcg) -> Vec<f64> {
    let mut lut = Vec::with_capacity(256);
    let mut v = rng.next_range(0.0, 5.0);
    for _ in 0..256 {
        v += rng.next_range(0.25, 2.5);
        lut.push(v);
    }
    lut
}

// Smallest |sample - center| over the ring samples of every interior
// pixel. Ring positions are taken once; only the interpolation runs per
// pixel.
fn min_ring_margin(image: &GrayImage, spec: SamplingSpec) -> f64 {
    let margin = spec.radius().ceil() as usize;
    let offsets: Vec<(f64, f64)> = {
        let (cx, cy) = (margin, margin);
        ring_samples(image, cx, cy, spec)
            .map(|_| ())
            .expect("interior center");
        let p = spec.points() as usize;
        (0..p)
            .map(|i| {
                let angle = 2.0 * std::f64::consts::PI * i as f64 / p as f64;
                (spec.radius() * angle.cos(), -spec.radius() * angle.sin())
            })
            .collect()
    };
    let mut min = f64::INFINITY;
    for y in margin..image.height() - margin {
        for x in margin..image.width() - margin {
            let center = image.get(x, y);
            for &(dx, dy) in &offsets {
                let s = image
                    .bilinear_sample(x as f64 + dx, y as f64 + dy)
                    .unwrap();
                min = min.min((s - center).abs());
            }
        }
    }
    min
}

// Continuous-valued random image: interpolated ties have measure zero,
// unlike on the integer lattice where half-integer collisions are common.
fn continuous_image(rng: &mut Lcg, width: usize, height: usize) -> GrayImage {
    let pixels = (0..width * height)
        .map(|_| rng.next_range(0.0, 255.0))
        .collect();
    GrayImage::new(width, height, pixels).unwrap()
}

#[test]
fn c04_grayscale_transform_stability() {
    let started = Instant::now();
    let mut rng = Lcg::new(0x9e3779b97f4a7c15);
    let spec = SamplingSpec::new(8, 1.5).unwrap();

    for round in 0..1000 {
        // Monotone lookup remap leaves the 3x3 codes untouched.
        let image = random_image(&mut rng, 32, 32);
        let lut = increasing_lut(&mut rng);
        let remapped = GrayImage::new(
            32,
            32,
            image.pixels().iter().map(|&v| lut[v as usize]).collect(),
        )
        .unwrap();
        let (codes, _) = basic_lbp(&image).unwrap();
        let (remapped_codes, _) = basic_lbp(&remapped).unwrap();
        assert_eq!(
            remapped_codes.codes(),
            codes.codes(),
            "criterion 4: monotone remap changed codes in round {round}"
        );

        // Positive affine remap leaves the interpolated codes untouched
        // on tie-free images.
        let mut tie_free = continuous_image(&mut rng, 32, 32);
        while min_ring_margin(&tie_free, spec) <= 1e-6 {
            tie_free = continuous_image(&mut rng, 32, 32);
        }
        let a = rng.next_range(0.1, 10.0);
        let b = rng.next_range(-50.0, 50.0);
        let mapped = GrayImage::new(
            32,
            32,
            tie_free.pixels().iter().map(|&v| a * v + b).collect(),
        )
        .unwrap();
        let codes = generalized_lbp(&tie_free, spec).unwrap();
        let mapped_codes = generalized_lbp(&mapped, spec).unwrap();
        assert_eq!(
            mapped_codes.codes(),
            codes.codes(),
            "criterion 4: affine remap (a={a}, b={b}) changed codes in round {round}"
        );
    }

    let elapsed = started.elapsed();
    eprintln!("criterion 4: 1000 rounds in {elapsed:?}");
    assert!(elapsed.as_secs() < 30, "criterion 4: must finish within 30 s");
}

// ---- criterion 5 --------------------------------------------------------

#[test]
fn c05_rotation_orbit_property_exhaustive() {
    let ri = build_code_mapping(MappingKind::RotationInvariant, 8).unwrap();
    for code in 0u32..256 {
        for k in 0..8 {
            assert_eq!(
                ri.bin_of(rotate_bits(code, k, 8)),
                ri.bin_of(code),
                "criterion 5: code {code}, rotation {k}"
            );
        }
    }
}

// ---- criterion 6 --------------------------------------------------------

#[test]
fn c06_grid_histogram_conservation_exact() {
    let mut rng = Lcg::new(0x5eed);
    let kinds = [
        MappingKind::Full,
        MappingKind::Uniform,
        MappingKind::RotationInvariant,
        MappingKind::UniformRotationInvariant,
    ];
    for round in 0..100 {
        let gx = 1 + rng.next_below(4) as usize;
        let gy = 1 + rng.next_below(4) as usize;
        let radius = [1.0, 2.0][rng.next_below(2) as usize];
        let spec = SamplingSpec::new(8, radius).unwrap();
        let margin = radius.ceil() as usize;
        // Interior dimensions divisible by the grid: empty remainders.
        let iw = gx * (2 + rng.next_below(5) as usize);
        let ih = gy * (2 + rng.next_below(5) as usize);
        let image = random_image(&mut rng, iw + 2 * margin, ih + 2 * margin);
        let kind = kinds[rng.next_below(4) as usize];
        let mapping = build_code_mapping(kind, 8).unwrap();

        let codes = generalized_lbp(&image, spec).unwrap();
        let global = plain_histogram(&codes, &mapping, false).unwrap();
        let grid = grid_histogram(&codes, &mapping, (gx, gy), false).unwrap();
        let mut sums = vec![0.0f64; mapping.bin_count()];
        for w in 0..grid.window_count() {
            for (bin, v) in grid.window(w).iter().enumerate() {
                sums[bin] += v;
            }
        }
        assert_eq!(sums, global.values, "criterion 6: round {round} ({gx}x{gy})");
        assert_eq!(
            global.values.iter().sum::<f64>(),
            (iw * ih) as f64,
            "criterion 6: total count, round {round}"
        );
    }
}

// ---- criterion 7 --------------------------------------------------------

#[test]
fn c07_spatiotemporal_degenerate_checks() {
    let spec = SamplingSpec::new(8, 1.0).unwrap();
    let mapping = build_code_mapping(MappingKind::Full, 8).unwrap();

    // Constant volume: every plane is one-hot at the all-ones code.
    let constant = VideoVolume::new(vec![GrayImage::from_fn(7, 6, |_, _| 5.0).unwrap(); 4]).unwrap();
    let d = lbp_top(&constant, spec, spec, spec, &mapping, false).unwrap();
    let voxels = (7.0 - 2.0) * (6.0 - 2.0) * (4.0 - 2.0);
    for plane in 0..3 {
        let hist = d.window(plane);
        assert_eq!(hist[255], voxels, "criterion 7: plane {plane} one-hot");
        assert_eq!(hist.iter().sum::<f64>(), voxels);
    }

    // Temporally constant volume: the XY plane equals the plain 2-D
    // histogram of the frame, exactly.
    let mut rng = Lcg::new(7);
    let frame = random_image(&mut rng, 14, 11);
    let volume = VideoVolume::new(vec![frame.clone(); 3]).unwrap();
    let d = lbp_top(&volume, spec, spec, spec, &mapping, false).unwrap();
    let flat = lbp_histogram(&generalized_lbp(&frame, spec).unwrap(), &mapping, false).unwrap();
    assert_eq!(d.window(0), &flat.values[..], "criterion 7: XY plane");
    assert_eq!(d.len(), 3 * 256, "criterion 7: descriptor length");
}

// ---- criterion 8 --------------------------------------------------------

fn sse_of_partition(points: &[Vec<f64>], members: &[Vec<usize>]) -> f64 {
    let dim = points[0].len();
    let mut sse = 0.0;
    for cluster in members {
        if cluster.is_empty() {
            continue;
        }
        let mut mean = vec![0.0f64; dim];
        for &i in cluster {
            for (m, v) in mean.iter_mut().zip(&points[i]) {
                *m += v;
            }
        }
        for m in &mut mean {
            *m /= cluster.len() as f64;
        }
        for &i in cluster {
            sse += points[i]
                .iter()
                .zip(&mean)
                .map(|(v, m)| (v - m) * (v - m))
                .sum::<f64>();
        }
    }
    sse
}

// Exhaustive optimum over every 2-partition (point 0 pinned to side A).
fn brute_force_two_cluster_sse(points: &[Vec<f64>]) -> f64 {
    let n = points.len();
    let mut best = f64::INFINITY;
    for mask in 1u32..1 << (n - 1) {
        let mut a = vec![0usize];
        let mut b = Vec::new();
        for i in 1..n {
            if mask >> (i - 1) & 1 == 1 {
                b.push(i);
            } else {
                a.push(i);
            }
        }
        best = best.min(sse_of_partition(points, &[a, b]));
    }
    best
}

#[test]
fn c08_kmeans_descent_and_small_instance_optimality() {
    // Monotone SSE along the deterministic iteration ladder.
    let mut rng = Lcg::new(88);
    for run in 0..100 {
        let n = 12 + rng.next_below(30) as usize;
        let dim = 1 + rng.next_below(3) as usize;
        let k = 2 + rng.next_below(4) as usize;
        let points: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..dim).map(|_| rng.next_range(-10.0, 10.0)).collect())
            .collect();
        let seed = rng.next_u64();
        let mut previous = f64::INFINITY;
        for max_iter in 1..=12 {
            let model = kmeans_fit(&points, k, seed, max_iter).unwrap();
            assert!(
                model.sse <= previous * (1.0 + 1e-12) + 1e-12,
                "criterion 8: SSE rose {previous} -> {} (run {run}, iter {max_iter})",
                model.sse
            );
            previous = model.sse;
        }
    }

    // Best over all distinct initialization pairs equals the brute-force
    // optimum over all 2-partitions.
    for run in 0..100 {
        let n = 4 + rng.next_below(5) as usize;
        let points: Vec<Vec<f64>> = (0..n)
            .map(|_| vec![rng.next_range(-5.0, 5.0), rng.next_range(-5.0, 5.0)])
            .collect();
        let mut best = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                if points[i] == points[j] {
                    continue;
                }
                let model = kmeans_fit_with_init(
                    &points,
                    vec![points[i].clone(), points[j].clone()],
                    100,
                )
                .unwrap();
                best = best.min(model.sse);
            }
        }
        let optimum = brute_force_two_cluster_sse(&points);
        assert!(
            (best - optimum).abs() <= 1e-9 * optimum.max(1.0),
            "criterion 8: best init {best} vs brute force {optimum} (run {run}, n {n})"
        );
    }
}

// ---- criterion 9 --------------------------------------------------------

// Full-sort oracle with the same tie rules, written independently.
fn oracle_knn(
    train: &LabeledDataset,
    k: usize,
    kind: DistanceKind,
    query: &[f64],
) -> (String, Vec<usize>) {
    let mut scored: Vec<(f64, usize)> = train
        .features()
        .iter()
        .enumerate()
        .map(|(i, row)| (histogram_distance(kind, query, row).unwrap(), i))
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let nearest = &scored[..k];

    let mut tally: std::collections::BTreeMap<&str, (usize, f64)> = Default::default();
    for &(d, i) in nearest {
        let e = tally.entry(train.label(i)).or_insert((0, 0.0));
        e.0 += 1;
        e.1 += d;
    }
    let mut best: Option<(&str, usize, f64)> = None;
    for (label, (count, sum)) in tally {
        let better = match best {
            None => true,
            Some((bl, bc, bs)) => {
                count > bc || (count == bc && (sum < bs || (sum == bs && label < bl)))
            }
        };
        if better {
            best = Some((label, count, sum));
        }
    }
    (
        best.unwrap().0.to_string(),
        nearest.iter().map(|&(_, i)| i).collect(),
    )
}

#[test]
fn c09_knn_matches_exhaustive_oracle() {
    let mut rng = Lcg::new(0xca11);
    let kinds = [
        DistanceKind::ChiSquare,
        DistanceKind::L1,
        DistanceKind::L2,
        DistanceKind::HistogramIntersection,
    ];
    for round in 0..100 {
        let n = 5 + rng.next_below(40) as usize;
        let dim = 2 + rng.next_below(6) as usize;
        let classes = 2 + rng.next_below(3);
        for &kind in &kinds {
            // Nonnegative features; sum-1 normalized for intersection.
            let make_row = |rng: &mut Lcg| -> Vec<f64> {
                let mut row: Vec<f64> =
                    (0..dim).map(|_| rng.next_range(0.01, 1.0)).collect();
                if kind == DistanceKind::HistogramIntersection {
                    let total: f64 = row.iter().sum();
                    for v in &mut row {
                        *v /= total;
                    }
                }
                row
            };
            let features: Vec<Vec<f64>> = (0..n).map(|_| make_row(&mut rng)).collect();
            let labels: Vec<String> =
                (0..n).map(|_| format!("c{}", rng.next_below(classes))).collect();
            let train = LabeledDataset::new(dim, features, labels).unwrap();
            let query = make_row(&mut rng);
            let k = 1 + rng.next_below(n.min(7) as u64) as usize;

            let config = KnnConfig { k, distance: kind };
            let (label, neighbors) = knn_classify(&train, &config, &query).unwrap();
            let (oracle_label, oracle_neighbors) = oracle_knn(&train, k, kind, &query);
            assert_eq!(label, oracle_label, "criterion 9: round {round}, {kind}");
            assert_eq!(
                neighbors, oracle_neighbors,
                "criterion 9: neighbors, round {round}, {kind}"
            );
        }
    }
}

// ---- criterion 10 -------------------------------------------------------

fn pairwise_auc(samples: &[ScoredSample]) -> f64 {
    let mut concordant = 0.0;
    let mut total = 0.0;
    for pos in samples.iter().filter(|s| s.label) {
        for neg in samples.iter().filter(|s| !s.label) {
            total += 1.0;
            if pos.score > neg.score {
                concordant += 1.0;
            } else if pos.score == neg.score {
                concordant += 0.5;
            }
        }
    }
    concordant / total
}

#[test]
fn c10_auc_cross_check_and_random_scores() {
    let mut rng = Lcg::new(0xa0c);
    for round in 0..100 {
        let n = 10 + rng.next_below(190) as usize;
        let quantize = round % 2 == 0;
        let mut samples = vec![
            ScoredSample { score: rng.next_f64(), label: true },
            ScoredSample { score: rng.next_f64(), label: false },
        ];
        for _ in 2..n {
            let raw = rng.next_range(-2.0, 2.0);
            let score = if quantize { (raw * 8.0).round() / 8.0 } else { raw };
            samples.push(ScoredSample { score, label: rng.next_below(2) == 1 });
        }
        let roc = roc_curve(&samples).unwrap();
        let pairs = pairwise_auc(&samples);
        assert!(
            (roc.auc - pairs).abs() <= 1e-12,
            "criterion 10: {} vs {pairs} (round {round})",
            roc.auc
        );
    }

    // Balanced random scores hover around chance level.
    let mut labels: Vec<bool> = (0..10_000).map(|i| i % 2 == 0).collect();
    rng.shuffle(&mut labels);
    let samples: Vec<ScoredSample> = labels
        .into_iter()
        .map(|label| ScoredSample { score: rng.next_f64(), label })
        .collect();
    let auc = roc_curve(&samples).unwrap().auc;
    eprintln!("criterion 10: balanced random AUC = {auc}");
    assert!((0.45..=0.55).contains(&auc), "criterion 10: AUC {auc} not near 0.5");
}

// ---- criteria 11 and 12: synthetic texture bench -------------------------

const PATCH_SIDE: usize = 64;
const STRIPE_PERIOD: usize = 8;
const DARK: f64 = 98.0;
const BRIGHT: f64 = 158.0;

fn band(u: usize, phase: usize) -> f64 {
    if (u + phase) / (STRIPE_PERIOD / 2) % 2 == 0 {
        DARK
    } else {
        BRIGHT
    }
}

/// 64x64 patch of one texture family with per-patch brightness/contrast
/// jitter: vertical stripes, horizontal stripes, checkerboard, or white
/// noise.
fn texture_patch(class: usize, rng: &mut Lcg) -> GrayImage {
    let phase_x = rng.next_below(STRIPE_PERIOD as u64) as usize;
    let phase_y = rng.next_below(STRIPE_PERIOD as u64) as usize;
    let contrast = rng.next_range(0.5, 1.8);
    let brightness = rng.next_range(-40.0, 60.0);
    let mut pixels = Vec::with_capacity(PATCH_SIDE * PATCH_SIDE);
    for y in 0..PATCH_SIDE {
        for x in 0..PATCH_SIDE {
            let base = match class {
                0 => band(x, phase_x),
                1 => band(y, phase_y),
                2 => {
                    let cx = (x + phase_x) / (STRIPE_PERIOD / 2) % 2;
                    let cy = (y + phase_y) / (STRIPE_PERIOD / 2) % 2;
                    if cx == cy {
                        DARK
                    } else {
                        BRIGHT
                    }
                }
                _ => DARK + (BRIGHT - DARK) * rng.next_f64(),
            };
            pixels.push(contrast * base + brightness);
        }
    }
    GrayImage::new(PATCH_SIDE, PATCH_SIDE, pixels).unwrap()
}

fn u2_descriptor(image: &GrayImage) -> Vec<f64> {
    let spec = SamplingSpec::new(8, 1.0).unwrap();
    let mapping = build_code_mapping(MappingKind::Uniform, 8).unwrap();
    let codes = generalized_lbp(image, spec).unwrap();
    lbp_histogram(&codes, &mapping, false).unwrap().values
}

fn nearest_accuracy(
    train: &LabeledDataset,
    test: &LabeledDataset,
    distance: DistanceKind,
) -> f64 {
    let config = KnnConfig { k: 1, distance };
    let correct = (0..test.len())
        .filter(|&i| {
            let (label, _) = knn_classify(train, &config, test.feature(i)).unwrap();
            label == test.label(i)
        })
        .count();
    correct as f64 / test.len() as f64
}

#[test]
fn c11_texture_classification_beats_pixel_baseline() {
    let started = Instant::now();
    let mut rng = Lcg::new(0x7e87);
    let class_names = ["vstripes", "hstripes", "checker", "noise"];

    let mut descriptor_rows: Vec<(Vec<f64>, Vec<f64>, String)> = Vec::new();
    for class in 0..4 {
        for _ in 0..80 {
            let patch = texture_patch(class, &mut rng);
            let descriptor = u2_descriptor(&patch);
            let raw = patch.pixels().to_vec();
            descriptor_rows.push((descriptor, raw, class_names[class].to_string()));
        }
    }

    // First 40 per class train, last 40 held out.
    let mut lbp_train = Vec::new();
    let mut lbp_test = Vec::new();
    let mut raw_train = Vec::new();
    let mut raw_test = Vec::new();
    let mut train_labels = Vec::new();
    let mut test_labels = Vec::new();
    for (index, (descriptor, raw, label)) in descriptor_rows.into_iter().enumerate() {
        if index % 80 < 40 {
            lbp_train.push(descriptor);
            raw_train.push(raw);
            train_labels.push(label);
        } else {
            lbp_test.push(descriptor);
            raw_test.push(raw);
            test_labels.push(label);
        }
    }

    let dim = lbp_train[0].len();
    let lbp_train = LabeledDataset::new(dim, lbp_train, train_labels.clone()).unwrap();
    let lbp_test = LabeledDataset::new(dim, lbp_test, test_labels.clone()).unwrap();
    let raw_dim = PATCH_SIDE * PATCH_SIDE;
    let raw_train = LabeledDataset::new(raw_dim, raw_train, train_labels).unwrap();
    let raw_test = LabeledDataset::new(raw_dim, raw_test, test_labels).unwrap();

    let lbp_accuracy = nearest_accuracy(&lbp_train, &lbp_test, DistanceKind::ChiSquare);
    let baseline_accuracy = nearest_accuracy(&raw_train, &raw_test, DistanceKind::L2);
    let elapsed = started.elapsed();
    eprintln!(
        "criterion 11: lbp accuracy {lbp_accuracy}, raw-pixel baseline {baseline_accuracy}, {elapsed:?}"
    );
    assert!(
        lbp_accuracy >= 0.95,
        "criterion 11: accuracy {lbp_accuracy} below 0.95"
    );
    assert!(
        lbp_accuracy > baseline_accuracy,
        "criterion 11: lbp {lbp_accuracy} must beat the raw-pixel baseline {baseline_accuracy}"
    );
    assert!(elapsed.as_secs() < 60, "criterion 11: must finish within 60 s");
}

#[test]
fn c12_cluster_then_label_purity() {
    let started = Instant::now();
    let mut rng = Lcg::new(0xc1u64);
    let mut descriptors = Vec::new();
    let mut truth = Vec::new();
    for class in 0..3 {
        for _ in 0..30 {
            let patch = texture_patch(class, &mut rng);
            let mut descriptor = u2_descriptor(&patch);
            let total: f64 = descriptor.iter().sum();
            for v in &mut descriptor {
                *v /= total;
            }
            descriptors.push(descriptor);
            truth.push(class);
        }
    }

    let best: KMeansModel = (0..10)
        .map(|seed| kmeans_fit(&descriptors, 3, seed, 200).unwrap())
        .min_by(|a, b| a.sse.total_cmp(&b.sse))
        .unwrap();

    // Purity: dominant true class per cluster.
    let mut purity_hits = 0usize;
    for cluster in 0..3 {
        let mut counts = [0usize; 3];
        for (&assignment, &class) in best.assignments.iter().zip(&truth) {
            if assignment == cluster {
                counts[class] += 1;
            }
        }
        purity_hits += counts.iter().max().unwrap();
    }
    let purity = purity_hits as f64 / truth.len() as f64;
    let elapsed = started.elapsed();
    eprintln!("criterion 12: purity {purity} (best sse {}), {elapsed:?}", best.sse);
    assert!(purity >= 0.9, "criterion 12: purity {purity} below 0.9");
    assert!(elapsed.as_secs() < 30, "criterion 12: must finish within 30 s");
}

// ---- criterion 13 -------------------------------------------------------

#[test]
fn c13_basic_throughput_512() {
    let mut rng = Lcg::new(0x512);
    let image = random_image(&mut rng, 512, 512);
    // Warm-up, then best of five runs.
    let _ = std::hint::black_box(basic_lbp(&image).unwrap());
    let mut best = f64::INFINITY;
    for _ in 0..5 {
        let start = Instant::now();
        let out = basic_lbp(&image).unwrap();
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        std::hint::black_box(&out);
        best = best.min(elapsed);
    }
    eprintln!("criterion 13: basic operator on 512x512 took {best:.3} ms (best of 5)");
    assert!(
        best < 50.0,
        "criterion 13: {best:.3} ms exceeds the 50 ms budget"
    );
}

// ---- criterion 14 -------------------------------------------------------

#[test]
fn c14_mds_reconstruction() {
    let mut rng = Lcg::new(0xd15);
    let points: Vec<Vec<f64>> = (0..50)
        .map(|_| vec![rng.next_range(-10.0, 10.0), rng.next_range(-10.0, 10.0)])
        .collect();
    let distances = euclidean_distance_matrix(&points);
    let coords = mds_embed(&distances, 2).unwrap();
    let rebuilt = euclidean_distance_matrix(&coords);

    let mut num = 0.0f64;
    let mut den = 0.0f64;
    for i in 0..50 {
        for j in 0..50 {
            num += (rebuilt[i][j] - distances[i][j]).powi(2);
            den += distances[i][j].powi(2);
        }
    }
    let relative = (num / den).sqrt();
    eprintln!("criterion 14: relative reconstruction error {relative:.3e}");
    assert!(
        relative <= 1e-6,
        "criterion 14: relative error {relative} above 1e-6"
    );
}

// ---- criterion 15 -------------------------------------------------------

mod cli_fixtures {
    use std::fs;
    use std::path::Path;

    pub fn write_pgm(path: &Path, width: usize, height: usize, f: impl Fn(usize, usize) -> u8) {
        let mut bytes = format!("P5\n{width} {height}\n255\n").into_bytes();
        for y in 0..height {
            for x in 0..width {
                bytes.push(f(x, y));
            }
        }
        fs::write(path, bytes).unwrap();
    }

    pub fn populate(dir: &Path) {
        write_pgm(&dir.join("patch.pgm"), 3, 3, |x, y| {
            [[6, 5, 2], [7, 6, 1], [9, 8, 7]][y][x]
        });
        write_pgm(&dir.join("texture.pgm"), 24, 24, |x, y| {
            (((x * 7 + y * 13) % 23) * 11 % 256) as u8
        });
        let frames = dir.join("frames");
        fs::create_dir(&frames).unwrap();
        for t in 0..4 {
            write_pgm(&frames.join(format!("f{t:03}.pgm")), 9, 9, move |x, y| {
                (((x * 3 + y * 5 + t * 2) % 17) * 15 % 256) as u8
            });
        }
        fs::write(
            dir.join("train.csv"),
            "label,f0\nA,0\nA,2\nB,10\nB,11\n",
        )
        .unwrap();
        fs::write(dir.join("query.csv"), "label,f0\nB,6\nA,1\n").unwrap();
        fs::write(
            dir.join("features.csv"),
            "label,f0,f1\np,0,0\np,1,2\np,0.5,1.2\nq,9,18\nq,10,20\nq,9.5,19.1\n",
        )
        .unwrap();
        fs::write(
            dir.join("scores.csv"),
            "0.9,1\n0.8,1\n0.7,0\n0.4,1\n0.3,0\n0.1,0\n",
        )
        .unwrap();
    }
}

#[test]
fn c15_cli_determinism() {
    use std::process::Command;

    let dir = tempfile::tempdir().unwrap();
    cli_fixtures::populate(dir.path());
    let bin = env!("CARGO_BIN_EXE_lbpkit");
    let path_of = |name: &str| dir.path().join(name).display().to_string();

    let invocations: Vec<Vec<String>> = vec![
        vec!["describe".into(), path_of("patch.pgm"), "--basic".into(), "--mapping".into(), "full".into()],
        vec![
            "describe".into(),
            path_of("texture.pgm"),
            "--p".into(), "8".into(),
            "--r".into(), "1.5".into(),
            "--mapping".into(), "riu2".into(),
            "--grid".into(), "2x2".into(),
            "--normalize".into(),
        ],
        vec![
            "describe".into(),
            path_of("texture.pgm"),
            "--median-window".into(), "3".into(),
        ],
        vec!["describe-video".into(), path_of("frames"), "--mapping".into(), "u2".into()],
        vec![
            "classify".into(),
            "--train".into(), path_of("train.csv"),
            "--query".into(), path_of("query.csv"),
            "--k".into(), "3".into(),
            "--distance".into(), "l2".into(),
            "--labels".into(),
        ],
        vec![
            "cluster".into(),
            path_of("features.csv"),
            "--k".into(), "2".into(),
            "--seed".into(), "4".into(),
        ],
        vec![
            "reduce".into(),
            path_of("features.csv"),
            "--method".into(), "pca".into(),
            "--dims".into(), "2".into(),
        ],
        vec![
            "reduce".into(),
            path_of("features.csv"),
            "--method".into(), "mds".into(),
            "--dims".into(), "2".into(),
        ],
        vec!["eval".into(), path_of("scores.csv"), "--curve".into(), "roc".into()],
        vec!["eval".into(), path_of("scores.csv"), "--curve".into(), "pr".into()],
        vec!["selftest".into()],
    ];

    for args in &invocations {
        let run = || {
            let output = Command::new(bin)
                .args(args)
                .current_dir(dir.path())
                .output()
                .expect("binary runs");
            assert!(
                output.status.success(),
                "criterion 15: `{}` failed: {}",
                args.join(" "),
                String::from_utf8_lossy(&output.stderr)
            );
            output.stdout
        };
        let first = run();
        let second = run();
        assert_eq!(
            first,
            second,
            "criterion 15: `{}` is not byte-deterministic",
            args.join(" ")
        );
        assert!(!first.is_empty(), "criterion 15: `{}` wrote nothing", args.join(" "));
    }

    // Selftest must report success for every embedded check.
    let output = Command::new(bin).arg("selftest").output().unwrap();
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(output.status.success(), "criterion 15: selftest failed");
    assert!(!stdout.contains("FAIL"), "criterion 15: selftest reported failures");
}
