//! Expression and label files.
//!
//! Expression CSV: header `gene_id,<sample_1>,...,<sample_S>`, then one row
//! per gene with a gene id and `S` decimal values.
//!
//! Labels CSV: header `sample_id,class,split`, one row per sample. `split`
//! is `train` or `test`; exactly two distinct `class` values must appear,
//! and the first one seen becomes class one.
//!
//! Parse errors carry the file name and the 1-based line number.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{config, Error, Result};
use crate::genesel::{signal_to_noise, Class, Dataset, Split};

#[derive(Debug, Clone, PartialEq)]
pub struct ExpressionMatrix {
    pub gene_ids: Vec<String>,
    pub sample_ids: Vec<String>,
    /// Gene-major values, `values[g][s]`.
    pub values: Vec<Vec<f64>>,
}

/// Class and split per sample, aligned with the expression header.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelAssignment {
    pub class_names: [String; 2],
    pub labels: Vec<Class>,
    pub splits: Vec<Split>,
}

fn parse_err(file: &Path, line: u64, message: impl Into<String>) -> Error {
    Error::Parse {
        file: file.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn reader(path: &Path) -> Result<csv::Reader<File>> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    Ok(csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file))
}

/// Yields `(line, record)` pairs, skipping blank lines.
fn records(path: &Path) -> Result<Vec<(u64, csv::StringRecord)>> {
    let mut out = Vec::new();
    for rec in reader(path)?.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(path, line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.iter().all(str::is_empty) {
            continue;
        }
        out.push((line, rec));
    }
    Ok(out)
}

pub fn load_expression_csv(path: impl AsRef<Path>) -> Result<ExpressionMatrix> {
    let path = path.as_ref();
    let rows = records(path)?;
    let mut rows = rows.into_iter();
    let (hline, header) = rows
        .next()
        .ok_or_else(|| parse_err(path, 1, "empty file"))?;
    if header.get(0) != Some("gene_id") {
        return Err(parse_err(path, hline, "header must start with `gene_id`"));
    }
    let sample_ids: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    if sample_ids.is_empty() {
        return Err(parse_err(path, hline, "header lists no samples"));
    }
    let mut seen = HashMap::new();
    for id in &sample_ids {
        if seen.insert(id.as_str(), ()).is_some() {
            return Err(parse_err(
                path,
                hline,
                format!("duplicate sample id {id:?}"),
            ));
        }
    }

    let mut gene_ids = Vec::new();
    let mut values = Vec::new();
    let mut gene_lines: HashMap<String, u64> = HashMap::new();
    for (line, rec) in rows {
        if rec.len() != sample_ids.len() + 1 {
            return Err(parse_err(
                path,
                line,
                format!(
                    "expected {} values, found {}",
                    sample_ids.len(),
                    rec.len().saturating_sub(1)
                ),
            ));
        }
        let gene = rec[0].to_string();
        if gene.is_empty() {
            return Err(parse_err(path, line, "empty gene id"));
        }
        if let Some(first) = gene_lines.insert(gene.clone(), line) {
            return Err(parse_err(
                path,
                line,
                format!("duplicate gene id {gene:?} (first seen on line {first})"),
            ));
        }
        let row = rec
            .iter()
            .skip(1)
            .enumerate()
            .map(|(j, cell)| match cell.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(parse_err(
                    path,
                    line,
                    format!(
                        "sample {:?}: {cell:?} is not a finite number",
                        sample_ids[j]
                    ),
                )),
            })
            .collect::<Result<Vec<f64>>>()?;
        gene_ids.push(gene);
        values.push(row);
    }
    if gene_ids.is_empty() {
        return Err(parse_err(path, hline, "no gene rows"));
    }
    Ok(ExpressionMatrix {
        gene_ids,
        sample_ids,
        values,
    })
}

/// Writes a matrix with 17 significant digits, which reloads bit-exactly.
pub fn write_expression_csv(path: impl AsRef<Path>, m: &ExpressionMatrix) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut w = BufWriter::new(file);
    let mut body = String::from("gene_id");
    for s in &m.sample_ids {
        body.push(',');
        body.push_str(s);
    }
    body.push('\n');
    for (gene, row) in m.gene_ids.iter().zip(&m.values) {
        body.push_str(gene);
        for v in row {
            body.push_str(&format!(",{v:.16e}"));
        }
        body.push('\n');
    }
    w.write_all(body.as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| io_err(path, e))
}

/// Reads a label file and aligns it with `sample_ids`.
pub fn load_labels(path: impl AsRef<Path>, sample_ids: &[String]) -> Result<LabelAssignment> {
    let path = path.as_ref();
    let mut rows = records(path)?.into_iter();
    let (hline, header) = rows
        .next()
        .ok_or_else(|| parse_err(path, 1, "empty file"))?;
    if header.iter().collect::<Vec<_>>() != ["sample_id", "class", "split"] {
        return Err(parse_err(
            path,
            hline,
            "header must be `sample_id,class,split`",
        ));
    }

    let index: HashMap<&str, usize> = sample_ids
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let mut class_names: Vec<String> = Vec::new();
    let mut assigned: Vec<Option<(Class, Split)>> = vec![None; sample_ids.len()];
    for (line, rec) in rows {
        if rec.len() != 3 {
            return Err(parse_err(
                path,
                line,
                format!("expected 3 fields, found {}", rec.len()),
            ));
        }
        let (id, class, split) = (&rec[0], &rec[1], &rec[2]);
        let &i = index
            .get(id)
            .ok_or_else(|| parse_err(path, line, format!("unknown sample id {id:?}")))?;
        if assigned[i].is_some() {
            return Err(parse_err(
                path,
                line,
                format!("sample {id:?} is labelled twice"),
            ));
        }
        let class = match class_names.iter().position(|c| c == class) {
            Some(0) => Class::One,
            Some(_) => Class::Two,
            None if class.is_empty() => {
                return Err(parse_err(path, line, "empty class"));
            }
            None if class_names.len() < 2 => {
                class_names.push(class.to_string());
                if class_names.len() == 1 {
                    Class::One
                } else {
                    Class::Two
                }
            }
            None => {
                return Err(parse_err(
                    path,
                    line,
                    format!(
                        "third class {class:?}; already have {:?} and {:?}",
                        class_names[0], class_names[1]
                    ),
                ))
            }
        };
        let split = match split.to_ascii_lowercase().as_str() {
            "train" => Split::Train,
            "test" => Split::Test,
            other => {
                return Err(parse_err(
                    path,
                    line,
                    format!("split must be `train` or `test`, got {other:?}"),
                ))
            }
        };
        assigned[i] = Some((class, split));
    }

    let missing: Vec<&str> = sample_ids
        .iter()
        .zip(&assigned)
        .filter(|(_, a)| a.is_none())
        .map(|(s, _)| s.as_str())
        .collect();
    if !missing.is_empty() {
        return Err(Error::Validation {
            file: path.to_path_buf(),
            message: format!("no label for samples: {}", missing.join(", ")),
        });
    }
    if class_names.len() != 2 {
        return Err(Error::Validation {
            file: path.to_path_buf(),
            message: format!("exactly two classes required, found {}", class_names.len()),
        });
    }
    let (labels, splits) = assigned.into_iter().map(Option::unwrap).unzip();
    let [a, b]: [String; 2] = class_names.try_into().unwrap();
    Ok(LabelAssignment {
        class_names: [a, b],
        labels,
        splits,
    })
}

/// Loads an expression file and its label file into a validated dataset.
pub fn load_dataset(expression: impl AsRef<Path>, labels: impl AsRef<Path>) -> Result<Dataset> {
    let m = load_expression_csv(&expression)?;
    let l = load_labels(&labels, &m.sample_ids)?;
    Dataset::new(
        m.gene_ids,
        m.sample_ids,
        l.class_names,
        m.values,
        l.labels,
        l.splits,
    )
    .map_err(|e| match e {
        Error::Config(message) => Error::Validation {
            file: PathBuf::from(labels.as_ref()),
            message,
        },
        other => other,
    })
}

/// Keeps the `k` genes with the largest absolute signal-to-noise ratio on
/// the training samples, ties broken by lower gene index. Retained genes
/// keep their original relative order.
pub fn prefilter_top_k(ds: &Dataset, k: usize) -> Result<Dataset> {
    if k == 0 || k > ds.gene_count() {
        return Err(config(format!(
            "prefilter k must lie in 1..={}, got {k}",
            ds.gene_count()
        )));
    }
    let scores = (0..ds.gene_count())
        .map(|g| signal_to_noise(ds, g, ds.train()).map(f64::abs))
        .collect::<Result<Vec<f64>>>()?;
    let mut order: Vec<usize> = (0..ds.gene_count()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    let mut keep = order[..k].to_vec();
    keep.sort_unstable();
    Ok(ds.select_genes(&keep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genesel::{synth_dataset, SynthParams};
    use std::fs;

    fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
        let p = dir.path().join(name);
        fs::write(&p, body).unwrap();
        p
    }

    const EXPR: &str = "gene_id,s1,s2,s3,s4\n\
                        g1,1.0,2.0,3.0,4.0\n\
                        g2,-1,0.5,2e-3,7\n\
                        g3,0,0,0,0\n";

    #[test]
    fn happy_path() {
        let dir = tempfile::tempdir().unwrap();
        let m = load_expression_csv(write(&dir, "e.csv", EXPR)).unwrap();
        assert_eq!(m.gene_ids, vec!["g1", "g2", "g3"]);
        assert_eq!(m.sample_ids, vec!["s1", "s2", "s3", "s4"]);
        assert_eq!(m.values[1], vec![-1.0, 0.5, 0.002, 7.0]);
    }

    #[test]
    fn ragged_row_names_line() {
        let dir = tempfile::tempdir().unwrap();
        let body = "gene_id,s1,s2,s3,s4\ng1,1,2,3,4\ng2,1,2,3\n";
        match load_expression_csv(write(&dir, "e.csv", body)) {
            Err(Error::Parse { line, file, .. }) => {
                assert_eq!(line, 3);
                assert!(file.ends_with("e.csv"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_expression_files() {
        let dir = tempfile::tempdir().unwrap();
        let cases = [
            ("", 1),
            ("gene_id,s1\ng1,1\ng1,2\n", 3),
            ("gene_id,s1\ng1,abc\n", 2),
            ("gene_id,s1\ng1,NaN\n", 2),
            ("gene,s1\ng1,1\n", 1),
            ("gene_id,s1\n", 1),
        ];
        for (i, (body, want)) in cases.into_iter().enumerate() {
            match load_expression_csv(write(&dir, &format!("{i}.csv"), body)) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "case {i}"),
                other => panic!("case {i}: unexpected {other:?}"),
            }
        }
        assert!(matches!(
            load_expression_csv(dir.path().join("missing.csv")),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn write_reload_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let m = ExpressionMatrix {
            gene_ids: vec!["a".into(), "b".into()],
            sample_ids: vec!["x".into(), "y".into(), "z".into()],
            values: vec![
                vec![0.1, 1.0 / 3.0, -2.5e-300],
                vec![f64::MAX, -0.0, 123456789.12345679],
            ],
        };
        let p = dir.path().join("rt.csv");
        write_expression_csv(&p, &m).unwrap();
        let back = load_expression_csv(&p).unwrap();
        assert_eq!(back.gene_ids, m.gene_ids);
        for (r, s) in back.values.iter().zip(&m.values) {
            for (a, b) in r.iter().zip(s) {
                assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }

    fn ids(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("s{i}")).collect()
    }

    #[test]
    fn labels_accepted() {
        let dir = tempfile::tempdir().unwrap();
        let body = "sample_id,class,split\ns2,AML,train\ns1,ALL,train\ns3,ALL,test\ns4,AML,test\n";
        let l = load_labels(write(&dir, "l.csv", body), &ids(4)).unwrap();
        assert_eq!(l.class_names, ["AML".to_string(), "ALL".to_string()]);
        assert_eq!(
            l.labels,
            vec![Class::Two, Class::One, Class::Two, Class::One]
        );
        assert_eq!(
            l.splits,
            vec![Split::Train, Split::Train, Split::Test, Split::Test]
        );
    }

    #[test]
    fn labels_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let third = "sample_id,class,split\ns1,A,train\ns2,B,train\ns3,C,test\n";
        match load_labels(write(&dir, "third.csv", third), &ids(3)) {
            Err(Error::Parse { line, message, .. }) => {
                assert_eq!(line, 4);
                assert!(message.contains("third class"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let missing = "sample_id,class,split\ns1,A,train\ns2,B,train\n";
        match load_labels(write(&dir, "missing.csv", missing), &ids(4)) {
            Err(Error::Validation { message, .. }) => assert!(message.contains("s3, s4")),
            other => panic!("unexpected {other:?}"),
        }
        for (i, body) in [
            "sample_id,class,split\ns9,A,train\n",
            "sample_id,class,split\ns1,A,train\ns1,B,train\n",
            "sample_id,class,split\ns1,A,holdout\n",
            "id,class,split\n",
        ]
        .iter()
        .enumerate()
        {
            let r = load_labels(write(&dir, &format!("bad{i}.csv"), body), &ids(2));
            assert!(matches!(r, Err(Error::Parse { .. })), "case {i}: {r:?}");
        }
        let one_class = "sample_id,class,split\ns1,A,train\ns2,A,train\n";
        assert!(matches!(
            load_labels(write(&dir, "one.csv", one_class), &ids(2)),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn load_dataset_requires_both_classes_in_training() {
        let dir = tempfile::tempdir().unwrap();
        let e = write(&dir, "e.csv", EXPR);
        let l = write(
            &dir,
            "l.csv",
            "sample_id,class,split\ns1,A,train\ns2,A,train\ns3,B,test\ns4,B,test\n",
        );
        assert!(matches!(
            load_dataset(&e, &l),
            Err(Error::Validation { .. })
        ));
        let l = write(
            &dir,
            "l2.csv",
            "sample_id,class,split\ns1,A,train\ns2,B,train\ns3,B,test\ns4,A,train\n",
        );
        let ds = load_dataset(&e, &l).unwrap();
        assert_eq!(ds.train(), &[0, 1, 3]);
        assert_eq!(ds.test(), &[2]);
    }

    fn synth() -> Dataset {
        synth_dataset(&SynthParams {
            genes: 20,
            train: 12,
            test: 8,
            informative: 1,
            separation: 8.0,
            seed: 3,
        })
        .unwrap()
    }

    #[test]
    fn prefilter_identity_at_full_k() {
        let ds = synth();
        assert_eq!(prefilter_top_k(&ds, 20).unwrap(), ds);
    }

    #[test]
    fn prefilter_keeps_strong_gene() {
        let ds = synth();
        let top = prefilter_top_k(&ds, 1).unwrap();
        assert_eq!(top.gene_ids(), &["gene_0".to_string()]);
        assert!(prefilter_top_k(&ds, 0).is_err());
        assert!(prefilter_top_k(&ds, 21).is_err());
    }

    #[test]
    fn prefilter_ignores_test_samples() {
        let ds = synth();
        let scrambled = ds.map_values(|g, s, v| {
            if ds.splits()[s] == Split::Test {
                v * 100.0 + (g * 7 % 5) as f64
            } else {
                v
            }
        });
        let a = prefilter_top_k(&ds, 5).unwrap();
        let b = prefilter_top_k(&scrambled, 5).unwrap();
        assert_eq!(a.gene_ids(), b.gene_ids());
    }

    #[test]
    fn prefilter_ties_break_by_gene_index() {
        let base = synth();
        // Genes 0..10 are constant (score 0); genes 10..20 are identical rows.
        let ds = base.map_values(|g, s, _| {
            if g < 10 {
                0.0
            } else if base.label(s) == Class::One {
                1.0 + (s % 3) as f64 * 0.1
            } else {
                (s % 2) as f64 * 0.1
            }
        });
        let top = prefilter_top_k(&ds, 3).unwrap();
        assert_eq!(top.gene_ids(), &["gene_10", "gene_11", "gene_12"]);
    }
}
