use std::fmt;

use crate::error::{config, Result};

/// One of the two class labels. `One` is the first class declared in the
/// label file (or the first generated class for synthetic data).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    One,
    Two,
}

impl Class {
    pub fn other(self) -> Class {
        match self {
            Class::One => Class::Two,
            Class::Two => Class::One,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Split {
    Train,
    Test,
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Split::Train => "train",
            Split::Test => "test",
        })
    }
}

/// Gene expression matrix with two-class labels and a train/test split.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    gene_ids: Vec<String>,
    sample_ids: Vec<String>,
    class_names: [String; 2],
    /// Gene-major: `expression[g][s]`.
    expression: Vec<Vec<f64>>,
    labels: Vec<Class>,
    splits: Vec<Split>,
    train: Vec<usize>,
    test: Vec<usize>,
}

impl Dataset {
    pub fn new(
        gene_ids: Vec<String>,
        sample_ids: Vec<String>,
        class_names: [String; 2],
        expression: Vec<Vec<f64>>,
        labels: Vec<Class>,
        splits: Vec<Split>,
    ) -> Result<Self> {
        let s = sample_ids.len();
        if gene_ids.is_empty() || s == 0 {
            return Err(config("dataset needs at least one gene and one sample"));
        }
        if expression.len() != gene_ids.len() {
            return Err(config(format!(
                "{} expression rows for {} gene ids",
                expression.len(),
                gene_ids.len()
            )));
        }
        for (g, row) in expression.iter().enumerate() {
            if row.len() != s {
                return Err(config(format!(
                    "gene {} has {} values for {s} samples",
                    gene_ids[g],
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(config(format!(
                    "gene {} sample {} is not finite",
                    gene_ids[g], sample_ids[j]
                )));
            }
        }
        if labels.len() != s || splits.len() != s {
            return Err(config("labels and splits must cover every sample"));
        }
        let train: Vec<usize> = (0..s).filter(|&j| splits[j] == Split::Train).collect();
        let test: Vec<usize> = (0..s).filter(|&j| splits[j] == Split::Test).collect();
        for class in [Class::One, Class::Two] {
            if !train.iter().any(|&j| labels[j] == class) {
                return Err(config(format!(
                    "class {:?} has no training samples",
                    class_names[class as usize]
                )));
            }
        }
        Ok(Dataset {
            gene_ids,
            sample_ids,
            class_names,
            expression,
            labels,
            splits,
            train,
            test,
        })
    }

    pub fn gene_count(&self) -> usize {
        self.gene_ids.len()
    }

    pub fn sample_count(&self) -> usize {
        self.sample_ids.len()
    }

    pub fn gene_ids(&self) -> &[String] {
        &self.gene_ids
    }

    pub fn sample_ids(&self) -> &[String] {
        &self.sample_ids
    }

    pub fn class_names(&self) -> &[String; 2] {
        &self.class_names
    }

    pub fn class_name(&self, class: Class) -> &str {
        &self.class_names[class as usize]
    }

    /// Expression of gene `g` across all samples.
    pub fn gene_row(&self, g: usize) -> &[f64] {
        &self.expression[g]
    }

    pub fn value(&self, gene: usize, sample: usize) -> f64 {
        self.expression[gene][sample]
    }

    /// Expression of every gene for one sample.
    pub fn sample_column(&self, sample: usize) -> Vec<f64> {
        self.expression.iter().map(|row| row[sample]).collect()
    }

    pub fn label(&self, sample: usize) -> Class {
        self.labels[sample]
    }

    pub fn labels(&self) -> &[Class] {
        &self.labels
    }

    pub fn splits(&self) -> &[Split] {
        &self.splits
    }

    /// Training sample indices, ascending.
    pub fn train(&self) -> &[usize] {
        &self.train
    }

    /// Test sample indices, ascending.
    pub fn test(&self) -> &[usize] {
        &self.test
    }

    /// Copy restricted to the given genes, in the given order.
    pub fn select_genes(&self, genes: &[usize]) -> Dataset {
        Dataset {
            gene_ids: genes.iter().map(|&g| self.gene_ids[g].clone()).collect(),
            expression: genes.iter().map(|&g| self.expression[g].clone()).collect(),
            ..self.clone()
        }
    }

    /// Copy with the class tags exchanged (class names follow their samples).
    pub fn with_swapped_classes(&self) -> Dataset {
        Dataset {
            class_names: [self.class_names[1].clone(), self.class_names[0].clone()],
            labels: self.labels.iter().map(|c| c.other()).collect(),
            ..self.clone()
        }
    }

    /// Copy with every label replaced.
    pub fn with_labels(&self, labels: Vec<Class>) -> Result<Dataset> {
        Dataset::new(
            self.gene_ids.clone(),
            self.sample_ids.clone(),
            self.class_names.clone(),
            self.expression.clone(),
            labels,
            self.splits.clone(),
        )
    }

    /// Copy with the expression matrix transformed value by value.
    pub fn map_values(&self, mut f: impl FnMut(usize, usize, f64) -> f64) -> Dataset {
        let expression = self
            .expression
            .iter()
            .enumerate()
            .map(|(g, row)| row.iter().enumerate().map(|(s, &v)| f(g, s, v)).collect())
            .collect();
        Dataset {
            expression,
            ..self.clone()
        }
    }
}
