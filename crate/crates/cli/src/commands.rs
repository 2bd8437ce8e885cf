//! Subcommand implementations. Every function returns a data-error
//! message on failure; main turns that into exit code 1.

use crate::{
    ClassifyArgs, ClusterArgs, DescribeArgs, DescribeVideoArgs, EvalArgs, MethodArg, ReduceArgs,
};
use lbpkit::eval::{pr_curve, pr_to_csv, roc_curve, roc_to_csv, scores_from_csv};
use lbpkit::learning::{
    dataset_from_csv, euclidean_distance_matrix, kmeans_fit, knn_classify, mds_embed, pca_fit,
    pca_project, KnnConfig, LabeledDataset,
};
use lbpkit::lbp::{
    basic_lbp, build_code_mapping, descriptor_csv_row, grid_descriptor, grid_histogram, lbp_top,
    median_robust_lbp, CodeMapping, Descriptor, SamplingSpec,
};
use lbpkit::{fmt_sig17, load_image, GrayImage, VideoVolume};
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

pub type CmdResult = Result<(), String>;

fn read_bytes(path: &Path) -> Result<Vec<u8>, String> {
    fs::read(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_text(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_output(output: &Option<PathBuf>, content: &str) -> CmdResult {
    match output {
        Some(path) => {
            fs::write(path, content).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load_gray(path: &Path) -> Result<GrayImage, String> {
    load_image(&read_bytes(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn dataset_from_file(path: &Path) -> Result<LabeledDataset, String> {
    dataset_from_csv(&read_text(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn describe(args: DescribeArgs) -> CmdResult {
    let points = if args.basic { 8 } else { args.p };
    let mapping = build_code_mapping(args.mapping.into(), points).map_err(|e| e.to_string())?;

    let results: Vec<String> = args
        .images
        .par_iter()
        .map(|path| describe_one(path, &args, &mapping))
        .collect::<Result<_, String>>()?;

    write_output(&args.output, &results.concat())
}

fn describe_one(
    path: &Path,
    args: &DescribeArgs,
    mapping: &CodeMapping,
) -> Result<String, String> {
    let image = load_gray(path)?;
    let context = |e: lbpkit::Error| format!("{}: {e}", path.display());

    let mut mean_contrast = None;
    let descriptor: Descriptor = if args.basic {
        let (codes, stats) = basic_lbp(&image).map_err(context)?;
        mean_contrast =
            Some(stats.iter().map(|s| s.contrast).sum::<f64>() / stats.len() as f64);
        grid_histogram(&codes, mapping, args.grid, args.normalize).map_err(context)?
    } else {
        let spec = SamplingSpec::new(args.p, args.r).map_err(context)?;
        match args.median_window {
            Some(window) => {
                let codes = median_robust_lbp(&image, spec, window).map_err(context)?;
                grid_histogram(&codes, mapping, args.grid, args.normalize).map_err(context)?
            }
            None => grid_descriptor(&image, spec, mapping, args.grid, args.normalize)
                .map_err(context)?,
        }
    };

    let mut out = descriptor_csv_row(&path.display().to_string(), &descriptor);
    if let Some(c) = mean_contrast {
        let _ = writeln!(out, "# mean_c={}", fmt_sig17(c));
    }
    Ok(out)
}

pub fn describe_video(args: DescribeVideoArgs) -> CmdResult {
    let dir = &args.frames;
    let mut frame_paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension()
                .map(|ext| ext.eq_ignore_ascii_case("pgm"))
                .unwrap_or(false)
        })
        .collect();
    if frame_paths.is_empty() {
        return Err(format!("{}: no .pgm frames found", dir.display()));
    }
    frame_paths.sort_by_key(|p| p.file_name().map(|n| n.to_os_string()));

    let frames: Vec<GrayImage> = frame_paths
        .iter()
        .map(|p| load_gray(p))
        .collect::<Result<_, String>>()?;
    let volume = VideoVolume::new(frames).map_err(|e| format!("{}: {e}", dir.display()))?;

    let spec = SamplingSpec::new(args.p, args.r).map_err(|e| e.to_string())?;
    let mapping = build_code_mapping(args.mapping.into(), args.p).map_err(|e| e.to_string())?;
    let descriptor = lbp_top(&volume, spec, spec, spec, &mapping, args.normalize)
        .map_err(|e| format!("{}: {e}", dir.display()))?;

    write_output(
        &args.output,
        &descriptor_csv_row(&dir.display().to_string(), &descriptor),
    )
}

pub fn classify(args: ClassifyArgs) -> CmdResult {
    let train = dataset_from_file(&args.train)?;
    let query = dataset_from_file(&args.query)?;
    if query.dim() != train.dim() {
        return Err(format!(
            "{}: query dimension {} does not match training dimension {}",
            args.query.display(),
            query.dim(),
            train.dim()
        ));
    }
    let config = KnnConfig {
        k: args.k as usize,
        distance: args.distance.into(),
    };

    let mut predictions = Vec::with_capacity(query.len());
    for i in 0..query.len() {
        let (label, _) = knn_classify(&train, &config, query.feature(i))
            .map_err(|e| format!("query row {}: {e}", i + 1))?;
        predictions.push(label);
    }

    let mut out = String::from("prediction\n");
    for label in &predictions {
        out.push_str(label);
        out.push('\n');
    }

    if args.labels {
        let actual = query.labels();
        let correct = predictions
            .iter()
            .zip(actual)
            .filter(|(p, a)| p == a)
            .count();
        let _ = writeln!(
            out,
            "# accuracy={}",
            fmt_sig17(correct as f64 / query.len() as f64)
        );
        // One-vs-rest confusion counts per class, classes sorted.
        let classes: BTreeSet<&String> = actual.iter().chain(predictions.iter()).collect();
        for class in classes {
            let mut tp = 0usize;
            let mut fp = 0usize;
            let mut tn = 0usize;
            let mut fn_ = 0usize;
            for (p, a) in predictions.iter().zip(actual) {
                match (p == class, a == class) {
                    (true, true) => tp += 1,
                    (true, false) => fp += 1,
                    (false, false) => tn += 1,
                    (false, true) => fn_ += 1,
                }
            }
            let _ = writeln!(out, "# class={class} tp={tp} fp={fp} tn={tn} fn={fn_}");
        }
    }
    write_output(&args.output, &out)
}

pub fn cluster(args: ClusterArgs) -> CmdResult {
    let data = dataset_from_file(&args.features)?;
    let model = kmeans_fit(
        data.features(),
        args.k as usize,
        args.seed,
        args.max_iter as usize,
    )
    .map_err(|e| format!("{}: {e}", args.features.display()))?;

    let mut out = String::from("assignment\n");
    for &a in &model.assignments {
        let _ = writeln!(out, "{a}");
    }
    let _ = writeln!(out, "# sse={}", fmt_sig17(model.sse));
    let _ = writeln!(out, "# iterations={}", model.iterations);
    write_output(&args.output, &out)?;

    let json = serde_json::to_string(&model).expect("model serializes");
    match &args.model {
        Some(path) => fs::write(path, json).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

pub fn reduce(args: ReduceArgs) -> CmdResult {
    let data = dataset_from_file(&args.features)?;
    if data.is_empty() {
        return Err(format!("{}: no samples", args.features.display()));
    }
    let dims = args.dims as usize;
    let coords = match args.method {
        MethodArg::Pca => {
            let model = pca_fit(data.features())
                .map_err(|e| format!("{}: {e}", args.features.display()))?;
            pca_project(&model, data.features(), dims)
                .map_err(|e| format!("{}: {e}", args.features.display()))?
        }
        MethodArg::Mds => {
            let distances = euclidean_distance_matrix(data.features());
            mds_embed(&distances, dims)
                .map_err(|e| format!("{}: {e}", args.features.display()))?
        }
    };

    let mut out = String::from("label");
    for d in 0..dims {
        let _ = write!(out, ",c{d}");
    }
    out.push('\n');
    for (i, row) in coords.iter().enumerate() {
        out.push_str(data.label(i));
        for v in row {
            out.push(',');
            out.push_str(&fmt_sig17(*v));
        }
        out.push('\n');
    }
    write_output(&args.output, &out)
}

pub fn eval(args: EvalArgs) -> CmdResult {
    let samples = scores_from_csv(&read_text(&args.scores)?)
        .map_err(|e| format!("{}: {e}", args.scores.display()))?;
    let content = match args.curve {
        crate::CurveArg::Roc => {
            let curve =
                roc_curve(&samples).map_err(|e| format!("{}: {e}", args.scores.display()))?;
            roc_to_csv(&curve)
        }
        crate::CurveArg::Pr => {
            let curve =
                pr_curve(&samples).map_err(|e| format!("{}: {e}", args.scores.display()))?;
            pr_to_csv(&curve)
        }
    };
    write_output(&args.output, &content)
}
