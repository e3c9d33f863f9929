//! `hatepipe`: train, evaluate and predict with Naive Bayes or a linear SVM
//! over CSV/ARFF text datasets.
//!
//! Exit codes: 0 success, 1 input/validation error, 2 training or
//! evaluation failure.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use hatepipe::config::{
    parse_analyzer, parse_ngrams, parse_range, parse_weighting, Algo, DataFormat, PipelineConfig,
};
use hatepipe::model::{ModelFile, ReportFile};
use hatepipe::pipeline::{
    align_to_schema, predict_vector, prepare_dataset, run_evaluation, run_training,
};
use hatepipe::synth;
use hatepipe::CliError;

use hatepipe_core::corpus::{
    parse_arff, parse_csv, read_csv_records, AttributeKind, AttributeSpec, ClassColumn, Dataset,
    Value,
};
use hatepipe_core::evaluation::render_report;
use hatepipe_core::features::{Analyzer, Weighting};
use hatepipe_core::preprocess::{clean_dataset_text, clean_text, TargetRange};

#[derive(Parser)]
#[command(
    name = "hatepipe",
    version,
    about = "Two-class text classification: corpus ingestion, preprocessing, NB/SVM training and Weka-style evaluation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split the data, fit preprocessing and features on the training side,
    /// train a model and write the model file
    Train(TrainArgs),
    /// Evaluate a model on a test file or on its stored held-out split
    Evaluate(EvaluateArgs),
    /// Label new instances with a trained model
    Predict(PredictArgs),
    /// Render a JSON report written by `evaluate --json`
    Report(ReportArgs),
    /// Generate a synthetic two-class corpus as CSV
    GenCorpus(GenCorpusArgs),
}

#[derive(Args)]
struct TrainArgs {
    /// Training data file
    #[arg(long)]
    input: Option<String>,
    /// Input format (default: by file extension)
    #[arg(long, value_enum)]
    format: Option<DataFormat>,
    /// Class column, by header name or zero-based index
    #[arg(long)]
    class_col: Option<String>,
    /// Fraction of instances held out for testing
    #[arg(long)]
    test_fraction: Option<f64>,
    /// Seed for the split and the SVM shuffles
    #[arg(long)]
    seed: Option<u64>,
    /// Where to write the model file
    #[arg(long)]
    model: PathBuf,
    /// Analyzer for text features: word or char
    #[arg(long, value_parser = parse_analyzer)]
    features: Option<Analyzer>,
    /// N-gram range, MIN..MAX
    #[arg(long, value_parser = parse_ngrams)]
    ngrams: Option<(usize, usize)>,
    /// Term weighting: binary, tf or tfidf
    #[arg(long, value_parser = parse_weighting)]
    weighting: Option<Weighting>,
    /// Model family
    #[arg(long, value_enum)]
    algo: Option<Algo>,
    /// SVM regularization
    #[arg(long)]
    lambda: Option<f64>,
    /// SVM training epochs
    #[arg(long)]
    epochs: Option<usize>,
    /// Naive Bayes smoothing
    #[arg(long)]
    alpha: Option<f64>,
    /// Keep only the top-k attributes by information gain
    #[arg(long)]
    select_k: Option<usize>,
    /// Normalization target range: 0,1 or -1,1
    #[arg(long, value_parser = parse_range)]
    normalize: Option<TargetRange>,
    /// Minimum document frequency for vocabulary terms
    #[arg(long)]
    min_df: Option<usize>,
    /// Disable text cleaning
    #[arg(long)]
    no_clean: bool,
    /// CSV input has no header row
    #[arg(long)]
    no_header: bool,
    /// JSON config file with the same keys as the flags; flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Model file written by `train`
    #[arg(long)]
    model: PathBuf,
    /// Labeled test data file
    #[arg(long, conflicts_with = "held_out")]
    input: Option<String>,
    /// Evaluate on the held-out split stored in the model file
    #[arg(long)]
    held_out: bool,
    /// Input format (default: by file extension)
    #[arg(long, value_enum)]
    format: Option<DataFormat>,
    /// CSV input has no header row
    #[arg(long)]
    no_header: bool,
    /// Also write the machine-readable JSON report to this path
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct PredictArgs {
    /// Model file written by `train`
    #[arg(long)]
    model: PathBuf,
    /// Instances to label (model schema, class column optional)
    #[arg(long)]
    input: String,
    /// Input format (default: by file extension)
    #[arg(long, value_enum)]
    format: Option<DataFormat>,
    /// CSV input has no header row
    #[arg(long)]
    no_header: bool,
    /// Write predictions here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// JSON report file written by `evaluate --json`
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct GenCorpusArgs {
    /// Where to write the CSV corpus
    #[arg(long)]
    output: PathBuf,
    /// Number of documents
    #[arg(long, default_value_t = 5000)]
    docs: usize,
    /// Generator seed
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Train(args) => cmd_train(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Predict(args) => cmd_predict(args),
        Command::Report(args) => cmd_report(args),
        Command::GenCorpus(args) => cmd_gen_corpus(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read '{path}': {e}")))
}

/// Parses a data file per the config's format, class column and header
/// settings.
fn load_dataset(path: &str, config: &PipelineConfig) -> Result<Dataset, CliError> {
    let format = DataFormat::infer(config.format, path)?;
    let text = read_input(path)?;
    let ds = match format {
        DataFormat::Csv => {
            let class = match &config.class_col {
                None => ClassColumn::Last,
                Some(sel) => match sel.parse::<usize>() {
                    Ok(idx) => ClassColumn::Index(idx),
                    Err(_) => ClassColumn::Name(sel.clone()),
                },
            };
            parse_csv(&text, class, config.header).map_err(|e| CliError::Input(e.to_string()))?
        }
        DataFormat::Arff => {
            let ds = parse_arff(&text).map_err(|e| CliError::Input(e.to_string()))?;
            match &config.class_col {
                None => ds,
                Some(sel) => {
                    let idx =
                        match sel.parse::<usize>() {
                            Ok(idx) => idx,
                            Err(_) => ds.schema().iter().position(|a| &a.name == sel).ok_or_else(
                                || CliError::Input(format!("class column '{sel}' not found")),
                            )?,
                        };
                    ds.with_class_index(Some(idx))
                        .map_err(|e| CliError::Input(e.to_string()))?
                }
            }
        }
    };
    Ok(ds)
}

fn merge_config(args: &TrainArgs) -> Result<PipelineConfig, CliError> {
    let mut config = match &args.config {
        None => PipelineConfig::default(),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                CliError::Input(format!("cannot read config '{}': {e}", path.display()))
            })?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("invalid config '{}': {e}", path.display())))?
        }
    };
    if let Some(v) = &args.input {
        config.input = Some(v.clone());
    }
    if let Some(v) = args.format {
        config.format = Some(v);
    }
    if let Some(v) = &args.class_col {
        config.class_col = Some(v.clone());
    }
    if let Some(v) = args.test_fraction {
        config.test_fraction = v;
    }
    if let Some(v) = args.seed {
        config.seed = v;
    }
    if let Some(v) = args.features {
        config.features = v;
    }
    if let Some(v) = args.ngrams {
        config.ngrams = v;
    }
    if let Some(v) = args.weighting {
        config.weighting = v;
    }
    if let Some(v) = args.algo {
        config.algo = v;
    }
    if let Some(v) = args.lambda {
        config.lambda = v;
    }
    if let Some(v) = args.epochs {
        config.epochs = v;
    }
    if let Some(v) = args.alpha {
        config.alpha = v;
    }
    if let Some(v) = args.select_k {
        config.select_k = Some(v);
    }
    if let Some(v) = args.normalize {
        config.normalize = v;
    }
    if let Some(v) = args.min_df {
        config.min_df = v;
    }
    if args.no_clean {
        config.clean = false;
    }
    if args.no_header {
        config.header = false;
    }
    config.validate()?;
    Ok(config)
}

fn algo_name(algo: Algo) -> &'static str {
    match algo {
        Algo::NbMultinomial => "nb",
        Algo::NbGaussian => "nb-gaussian",
        Algo::Svm => "svm",
    }
}

fn cmd_train(args: TrainArgs) -> Result<(), CliError> {
    let config = merge_config(&args)?;
    let input = config
        .input
        .clone()
        .ok_or_else(|| CliError::Input("no input file given (--input)".into()))?;
    let ds = load_dataset(&input, &config)?;
    let outcome = run_training(&ds, &config)?;

    println!(
        "Input: {} instances after cleaning ({} duplicates removed)",
        outcome.dataset_instances, outcome.dedup_removed
    );
    println!(
        "Split: {} train / {} test (fraction {}, seed {})",
        outcome.train_instances,
        outcome.test_indices.len(),
        config.test_fraction,
        config.seed
    );
    println!("Classes: {}", outcome.class_labels.join(", "));
    match &outcome.pipeline.vocabulary {
        Some(vocab) => println!(
            "Vocabulary: {} terms; feature space: {} dimensions",
            vocab.len(),
            outcome.pipeline.dim()
        ),
        None => println!(
            "Vocabulary: none (no text attributes); feature space: {} dimensions",
            outcome.pipeline.dim()
        ),
    }
    match outcome.svm_objective {
        Some(objective) => println!(
            "Model: {} (lambda {}, epochs {}); training objective {objective:.6}",
            algo_name(config.algo),
            config.lambda,
            config.epochs
        ),
        None => println!("Model: {} (alpha {})", algo_name(config.algo), config.alpha),
    }

    let model_file = ModelFile::from_outcome(outcome, config);
    model_file.save(&args.model)?;
    println!("Model written to {}", args.model.display());
    Ok(())
}

/// Loads the evaluation dataset: either the stored held-out split (re-derived
/// deterministically from the training input) or an external labeled file.
fn evaluation_dataset(
    args: &EvaluateArgs,
    model: &ModelFile,
) -> Result<(Dataset, &'static str), CliError> {
    if args.held_out {
        let input =
            model.config.input.clone().ok_or_else(|| {
                CliError::Input("model file records no training input path".into())
            })?;
        let ds = load_dataset(&input, &model.config)?;
        let (prepared, _) = prepare_dataset(&ds, model.config.clean);
        if prepared.n_instances() != model.dataset_instances {
            return Err(CliError::Input(format!(
                "'{input}' changed since training: {} instances now, {} at training time",
                prepared.n_instances(),
                model.dataset_instances
            )));
        }
        Ok((
            prepared.select_rows(&model.test_indices),
            "held-out test split",
        ))
    } else {
        let input = args
            .input
            .clone()
            .ok_or_else(|| CliError::Input("pass --input FILE or --held-out".into()))?;
        let mut config = model.config.clone();
        config.format = args.format;
        if args.no_header {
            config.header = false;
        }
        let ds = load_dataset(&input, &config)?;
        let aligned = align_to_schema(
            &ds,
            &model.pipeline.schema,
            Some(model.pipeline.class_index),
        )?;
        let prepared = if model.config.clean {
            clean_dataset_text(&aligned)
        } else {
            aligned
        };
        let mode = if Some(input.as_str()) == model.config.input.as_deref() {
            "resubstitution"
        } else {
            "supplied test set"
        };
        Ok((prepared, mode))
    }
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<(), CliError> {
    let model = ModelFile::load(&args.model)?;
    let (test, mode) = evaluation_dataset(&args, &model)?;
    let report = run_evaluation(&model.pipeline, &model.model, &model.priors, &test)?;
    println!("Evaluation mode: {mode}");
    println!();
    print!("{}", render_report(&report));
    if let Some(path) = &args.json {
        ReportFile::new(report).save(path)?;
        eprintln!("JSON report written to {}", path.display());
    }
    Ok(())
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Interprets one class-less CSV record against the expected schema (the
/// class slot is filled with a missing marker). An error marks the row as
/// malformed, to be skipped with a warning.
fn coerce_record(
    record: &[String],
    schema: &[AttributeSpec],
    class_index: usize,
) -> Result<Vec<Value>, String> {
    let mut row = Vec::with_capacity(schema.len());
    let mut cells = record.iter();
    for (attr, spec) in schema.iter().enumerate() {
        if attr == class_index {
            row.push(Value::Missing);
            continue;
        }
        let cell = cells.next().expect("arity checked by caller");
        if cell.is_empty() {
            row.push(Value::Missing);
            continue;
        }
        let value = match &spec.kind {
            AttributeKind::Numeric => match cell.trim().parse::<f64>() {
                Ok(v) if v.is_finite() => Value::Numeric(v),
                _ => return Err(format!("'{cell}' is not numeric for '{}'", spec.name)),
            },
            AttributeKind::Text => Value::Text(cell.clone()),
            AttributeKind::Nominal(values) => match values.iter().position(|v| v == cell) {
                Some(idx) => Value::Nominal(idx),
                None => {
                    return Err(format!(
                        "'{cell}' is not a training-time value of '{}'",
                        spec.name
                    ))
                }
            },
        };
        row.push(value);
    }
    Ok(row)
}

/// Rows for prediction: full schema rows with the class slot left missing.
fn prediction_rows(
    args: &PredictArgs,
    model: &ModelFile,
) -> Result<(Vec<Vec<Value>>, usize), CliError> {
    let schema = &model.pipeline.schema;
    let class_index = model.pipeline.class_index;
    let minus_class: Vec<AttributeSpec> = schema
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != class_index)
        .map(|(_, a)| a.clone())
        .collect();

    let format = DataFormat::infer(args.format, &args.input)?;
    let text = read_input(&args.input)?;
    match format {
        DataFormat::Csv => {
            let records = read_csv_records(&text).map_err(|e| CliError::Input(e.to_string()))?;
            let header = model.config.header && !args.no_header;
            let (names, data): (Option<&Vec<String>>, &[Vec<String>]) =
                if header && !records.is_empty() {
                    (Some(&records[0]), &records[1..])
                } else {
                    (None, &records[..])
                };
            let full_names: Vec<&str> = schema.iter().map(|a| a.name.as_str()).collect();
            let minus_names: Vec<&str> = minus_class.iter().map(|a| a.name.as_str()).collect();
            let with_class = match names {
                Some(head) => {
                    let head: Vec<&str> = head.iter().map(String::as_str).collect();
                    if head == minus_names {
                        false
                    } else if head == full_names {
                        true
                    } else {
                        return Err(CliError::Input(format!(
                            "input columns [{}] match neither the model schema nor the schema minus its class column",
                            head.join(", ")
                        )));
                    }
                }
                None => match data.first().map(Vec::len) {
                    None => false,
                    Some(n) if n == minus_names.len() => false,
                    Some(n) if n == full_names.len() => true,
                    Some(n) => {
                        return Err(CliError::Input(format!(
                            "rows have {n} fields; expected {} (without class) or {} (with class)",
                            minus_names.len(),
                            full_names.len()
                        )))
                    }
                },
            };

            let mut rows = Vec::new();
            let mut skipped = 0usize;
            for (i, record) in data.iter().enumerate() {
                let expected_len = if with_class {
                    schema.len()
                } else {
                    minus_class.len()
                };
                if record.len() != expected_len {
                    eprintln!(
                        "warning: skipping row {}: {} fields, expected {expected_len}",
                        i + 1,
                        record.len()
                    );
                    skipped += 1;
                    continue;
                }
                // a class cell, when present, is ignored for prediction
                let record_no_class: Vec<String> = if with_class {
                    record
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != class_index)
                        .map(|(_, c)| c.clone())
                        .collect()
                } else {
                    record.clone()
                };
                match coerce_record(&record_no_class, schema, class_index) {
                    Ok(row) => rows.push(row),
                    Err(reason) => {
                        eprintln!("warning: skipping row {}: {reason}", i + 1);
                        skipped += 1;
                    }
                }
            }
            Ok((rows, skipped))
        }
        DataFormat::Arff => {
            let ds = parse_arff(&text).map_err(|e| CliError::Input(e.to_string()))?;
            let aligned = if ds.n_attributes() == schema.len() {
                align_to_schema(&ds, schema, Some(class_index))?
            } else {
                let aligned = align_to_schema(&ds, &minus_class, None)?;
                let rows = aligned
                    .instances()
                    .iter()
                    .map(|row| {
                        let mut full = row.clone();
                        full.insert(class_index, Value::Missing);
                        full
                    })
                    .collect();
                Dataset::new(aligned.relation(), schema.clone(), Some(class_index), rows)
                    .map_err(|e| CliError::Input(e.to_string()))?
            };
            Ok((aligned.instances().to_vec(), 0))
        }
    }
}

fn cmd_predict(args: PredictArgs) -> Result<(), CliError> {
    let model = ModelFile::load(&args.model)?;
    let (rows, skipped) = prediction_rows(&args, &model)?;

    let labels = &model.class_labels;
    let two_class = labels.len() == 2;
    let prob_header = if two_class {
        format!("p_{}", labels[1])
    } else {
        "probability".to_string()
    };
    let mut out = String::new();
    out.push_str(&format!("predicted,{prob_header},score\n"));

    for row in &rows {
        let mut row = row.clone();
        if model.pipeline.clean {
            for value in row.iter_mut() {
                if let Value::Text(s) = value {
                    *value = Value::Text(clean_text(s));
                }
            }
        }
        let x = model.pipeline.vectorize_row(&row);
        let p = predict_vector(&model.model, &x)?;
        let probability = if two_class {
            p.distribution.probability(1)
        } else {
            p.distribution.probability(p.label)
        };
        let score = match p.decision_value {
            Some(f) => f,
            None => p.distribution.probability(p.label),
        };
        out.push_str(&format!(
            "{},{probability},{score}\n",
            csv_escape(&labels[p.label])
        ));
    }

    match &args.output {
        Some(path) => fs::write(path, &out)
            .map_err(|e| CliError::Input(format!("cannot write '{}': {e}", path.display())))?,
        None => {
            std::io::stdout()
                .write_all(out.as_bytes())
                .map_err(|e| CliError::Run(format!("cannot write predictions: {e}")))?;
        }
    }
    if skipped > 0 {
        eprintln!("warning: {skipped} rows skipped");
        if rows.is_empty() {
            return Err(CliError::Input("all input rows failed validation".into()));
        }
    }
    Ok(())
}

fn cmd_report(args: ReportArgs) -> Result<(), CliError> {
    let file = ReportFile::load(&args.input)?;
    print!("{}", render_report(&file.report));
    Ok(())
}

fn cmd_gen_corpus(args: GenCorpusArgs) -> Result<(), CliError> {
    let docs = synth::generate(args.docs, args.seed);
    let csv = synth::to_csv(&docs);
    fs::write(&args.output, csv)
        .map_err(|e| CliError::Input(format!("cannot write '{}': {e}", args.output.display())))?;
    println!(
        "Wrote {} documents (seed {}) to {}",
        args.docs,
        args.seed,
        args.output.display()
    );
    Ok(())
}
