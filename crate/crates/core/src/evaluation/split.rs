//! Deterministic stratified train/test splitting.
//!
//! Per-class test quotas are round(class_count * fraction) reconciled by
//! largest remainder so the total is exactly round(N * fraction); selection
//! within a class is a seeded shuffle, and both output splits keep the
//! original instance order.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::EvalError;
use crate::corpus::Dataset;

/// Row indices of a stratified split; `train` is the complement of `test`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitIndices {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Computes the per-class test allocation: floor quotas topped up by largest
/// remainder until the overall target is met, then adjusted so no class with
/// at least two instances is left empty in either split when avoidable.
fn allocate(counts: &[usize], fraction: f64, target: usize) -> Vec<usize> {
    let quotas: Vec<f64> = counts.iter().map(|&c| c as f64 * fraction).collect();
    let mut alloc: Vec<usize> = quotas.iter().map(|q| q.floor() as usize).collect();
    let mut deficit = target.saturating_sub(alloc.iter().sum());

    let mut order: Vec<usize> = (0..counts.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = quotas[a] - quotas[a].floor();
        let rb = quotas[b] - quotas[b].floor();
        rb.partial_cmp(&ra).unwrap().then(a.cmp(&b))
    });
    while deficit > 0 {
        let mut progressed = false;
        for &c in &order {
            if deficit == 0 {
                break;
            }
            if alloc[c] < counts[c] {
                alloc[c] += 1;
                deficit -= 1;
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }

    // avoid empty-class splits whenever the class has instances to spare
    for c in 0..counts.len() {
        if counts[c] >= 2 && alloc[c] == 0 {
            if let Some(donor) = (0..counts.len())
                .filter(|&d| alloc[d] >= 2)
                .max_by_key(|&d| alloc[d])
            {
                alloc[donor] -= 1;
                alloc[c] += 1;
            }
        }
    }
    for c in 0..counts.len() {
        if counts[c] >= 2 && alloc[c] == counts[c] {
            if let Some(taker) = (0..counts.len())
                .filter(|&d| d != c && alloc[d] + 1 < counts[d])
                .min_by_key(|&d| alloc[d])
            {
                alloc[c] -= 1;
                alloc[taker] += 1;
            }
        }
    }
    alloc
}

/// Computes stratified split indices over a labeled dataset.
pub fn stratified_split_indices(
    ds: &Dataset,
    test_fraction: f64,
    seed: u64,
) -> Result<SplitIndices, EvalError> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(EvalError::InvalidFraction(test_fraction));
    }
    if ds.n_instances() == 0 {
        return Err(EvalError::EmptyDataset);
    }
    let labels = ds.labels()?;

    let mut per_class: Vec<Vec<usize>> = vec![Vec::new(); ds.n_classes()];
    for (row, label) in labels.iter().enumerate() {
        per_class[label.0].push(row);
    }
    let counts: Vec<usize> = per_class.iter().map(Vec::len).collect();
    let target = (ds.n_instances() as f64 * test_fraction).round() as usize;
    let alloc = allocate(&counts, test_fraction, target);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut in_test = vec![false; ds.n_instances()];
    for (rows, &take) in per_class.iter_mut().zip(&alloc) {
        rows.shuffle(&mut rng);
        for &row in rows.iter().take(take) {
            in_test[row] = true;
        }
    }

    let mut train = Vec::with_capacity(ds.n_instances() - target);
    let mut test = Vec::with_capacity(target);
    for (row, &is_test) in in_test.iter().enumerate() {
        if is_test {
            test.push(row);
        } else {
            train.push(row);
        }
    }
    Ok(SplitIndices { train, test })
}

/// Stratified split into (train, test) datasets.
pub fn stratified_split(
    ds: &Dataset,
    test_fraction: f64,
    seed: u64,
) -> Result<(Dataset, Dataset), EvalError> {
    let indices = stratified_split_indices(ds, test_fraction, seed)?;
    Ok((
        ds.select_rows(&indices.train),
        ds.select_rows(&indices.test),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{AttributeSpec, Dataset, Value};

    fn class_only_dataset(counts: &[usize]) -> Dataset {
        let values: Vec<String> = (0..counts.len()).map(|i| format!("c{i}")).collect();
        let schema = vec![AttributeSpec::nominal("class", values)];
        let mut instances = Vec::new();
        for (class, &count) in counts.iter().enumerate() {
            for _ in 0..count {
                instances.push(vec![Value::Nominal(class)]);
            }
        }
        Dataset::new("r", schema, Some(0), instances).unwrap()
    }

    #[test]
    fn paper_shaped_split_is_exact() {
        // 62485 instances at fraction 0.2 -> 12497 test instances
        let ds = class_only_dataset(&[27124, 35361]);
        assert_eq!(ds.n_instances(), 62485);
        let (train, test) = stratified_split(&ds, 0.2, 42).unwrap();
        assert_eq!(test.n_instances(), 12497);
        assert_eq!(train.n_instances(), 49988);
        // per-class proportions within one instance of exact stratification
        let test_counts = test.class_counts();
        assert!((test_counts[0] as f64 - 27124.0 * 0.2).abs() <= 1.0);
        assert!((test_counts[1] as f64 - 35361.0 * 0.2).abs() <= 1.0);
    }

    #[test]
    fn balanced_half_split_takes_half_of_each_class() {
        let ds = class_only_dataset(&[10, 10]);
        let (_, test) = stratified_split(&ds, 0.5, 7).unwrap();
        assert_eq!(test.class_counts(), vec![5, 5]);
    }

    #[test]
    fn same_inputs_give_identical_splits() {
        let ds = class_only_dataset(&[30, 20]);
        let a = stratified_split_indices(&ds, 0.3, 123).unwrap();
        let b = stratified_split_indices(&ds, 0.3, 123).unwrap();
        assert_eq!(a, b);
        let c = stratified_split_indices(&ds, 0.3, 124).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn small_class_keeps_presence_in_both_splits() {
        let ds = class_only_dataset(&[100, 2]);
        let (train, test) = stratified_split(&ds, 0.2, 1).unwrap();
        let train_counts = train.class_counts();
        let test_counts = test.class_counts();
        assert!(train_counts[1] >= 1);
        assert!(test_counts[1] >= 1);
        assert_eq!(test.n_instances(), 20);
    }

    #[test]
    fn invalid_fraction_is_rejected() {
        let ds = class_only_dataset(&[4, 4]);
        assert!(matches!(
            stratified_split(&ds, 0.0, 1),
            Err(EvalError::InvalidFraction(_))
        ));
        assert!(matches!(
            stratified_split(&ds, 1.0, 1),
            Err(EvalError::InvalidFraction(_))
        ));
    }

    #[test]
    fn splits_preserve_original_order() {
        let ds = class_only_dataset(&[6, 6]);
        let idx = stratified_split_indices(&ds, 0.25, 5).unwrap();
        let mut sorted = idx.test.clone();
        sorted.sort_unstable();
        assert_eq!(idx.test, sorted);
        let mut all: Vec<usize> = idx.train.iter().chain(&idx.test).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..12).collect::<Vec<_>>());
    }
}
