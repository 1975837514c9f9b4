//! Turning inline statistics or data files into model instances.

use mim_core::models::{
    summarize_gamma, summarize_normal, summarize_pairs, summarize_two_sample, summarize_vector,
    CorrSummary, GammaSummary, NormalSummary, RatioData, TwoSampleSummary, VectorSummary,
};
use mim_core::{Error, ModelId, ModelInstance, Result};
use std::collections::BTreeMap;
use std::path::Path;

/// Keys accepted by `--stats` for each model.
pub fn stat_keys(model: ModelId) -> &'static [&'static str] {
    match model {
        ModelId::NormalMean => &["n", "mean"],
        ModelId::NormalMeanT => &["n", "mean", "sd"],
        ModelId::Correlation => &["n", "r"],
        ModelId::MeanRatio => &["x1", "x2"],
        ModelId::Mnm => &["n", "norm-sq"],
        ModelId::BehrensFisher => &["n1", "n2", "mean1", "mean2", "sd1", "sd2"],
        ModelId::GammaMean => &["n", "t1", "t2"],
    }
}

struct Stats {
    model: ModelId,
    values: BTreeMap<String, f64>,
}

impl Stats {
    fn parse(model: ModelId, text: &str) -> Result<Self> {
        let keys = stat_keys(model);
        let mut values = BTreeMap::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("--stats entry '{item}' is not key=value")))?;
            let k = k.trim();
            if !keys.contains(&k) {
                return Err(Error::Input(format!(
                    "--stats key '{k}' is not used by {model} (expected {})",
                    keys.join(", ")
                )));
            }
            let v: f64 = v.trim().parse().map_err(|_| {
                Error::Input(format!("--stats value for '{k}' is not a number: '{v}'"))
            })?;
            if values.insert(k.to_string(), v).is_some() {
                return Err(Error::Input(format!("--stats key '{k}' given twice")));
            }
        }
        if let Some(missing) = keys.iter().find(|k| !values.contains_key(**k)) {
            return Err(Error::Input(format!(
                "--stats for {model} needs {} (missing '{missing}')",
                keys.join(", ")
            )));
        }
        Ok(Self { model, values })
    }

    fn real(&self, key: &str) -> f64 {
        self.values[key]
    }

    fn count(&self, key: &str) -> Result<usize> {
        let v = self.values[key];
        if v >= 0.0 && v.fract() == 0.0 && v < 1e15 {
            Ok(v as usize)
        } else {
            Err(Error::Input(format!(
                "--stats {key} must be a nonnegative integer for {}, got {v}",
                self.model
            )))
        }
    }
}

fn require_sigma(sigma: Option<f64>) -> Result<f64> {
    sigma.ok_or_else(|| Error::Input("normal-mean needs --sigma".into()))
}

/// Builds a model instance from `--stats key=value,...`.
pub fn from_stats(model: ModelId, text: &str, sigma: Option<f64>) -> Result<ModelInstance> {
    let s = Stats::parse(model, text)?;
    Ok(match model {
        ModelId::NormalMean => ModelInstance::NormalMean {
            summary: NormalSummary::new(s.count("n")?, s.real("mean"), None)?,
            sigma: require_sigma(sigma)?,
        },
        ModelId::NormalMeanT => ModelInstance::NormalMeanT {
            summary: NormalSummary::new(s.count("n")?, s.real("mean"), Some(s.real("sd")))?,
        },
        ModelId::Correlation => ModelInstance::Correlation {
            summary: CorrSummary::new(s.count("n")?, s.real("r"))?,
        },
        ModelId::MeanRatio => ModelInstance::MeanRatio {
            data: RatioData::new(s.real("x1"), s.real("x2"))?,
        },
        ModelId::Mnm => ModelInstance::Mnm {
            summary: VectorSummary::new(s.count("n")?, s.real("norm-sq"))?,
        },
        ModelId::BehrensFisher => ModelInstance::BehrensFisher {
            summary: TwoSampleSummary::new(
                s.count("n1")?,
                s.count("n2")?,
                s.real("mean1"),
                s.real("mean2"),
                s.real("sd1"),
                s.real("sd2"),
            )?,
        },
        ModelId::GammaMean => ModelInstance::GammaMean {
            summary: GammaSummary::new(s.count("n")?, s.real("t1"), s.real("t2"))?,
        },
    })
}

/// Rows of a delimited text file. Blank lines and lines starting with `#`
/// are skipped; fields are separated by commas, semicolons, tabs or spaces.
pub fn read_rows(text: &str) -> Vec<(usize, Vec<String>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| {
            let fields = l
                .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
                .filter(|f| !f.is_empty())
                .map(str::to_string)
                .collect();
            (i, fields)
        })
        .collect()
}

fn number(field: &str, line: usize) -> Result<f64> {
    field
        .parse()
        .map_err(|_| Error::Input(format!("line {line}: '{field}' is not a number")))
}

fn columns(rows: &[(usize, Vec<String>)], want: usize) -> Result<()> {
    match rows.iter().find(|(_, f)| f.len() != want) {
        Some((line, f)) => Err(Error::Input(format!(
            "line {line}: expected {want} column(s), found {}",
            f.len()
        ))),
        None => Ok(()),
    }
}

fn single_column(rows: &[(usize, Vec<String>)]) -> Result<Vec<f64>> {
    columns(rows, 1)?;
    rows.iter().map(|(line, f)| number(&f[0], *line)).collect()
}

/// Builds a model instance from a data file.
///
/// One-sample models read one value per line. `correlation` reads two
/// columns of paired values. `mean-ratio` reads x1 and x2, on one line or
/// two. `behrens-fisher` reads a group label column (1-based index `group`)
/// and a value column; the label seen first marks sample 1.
pub fn from_text(
    model: ModelId,
    text: &str,
    sigma: Option<f64>,
    group: usize,
) -> Result<ModelInstance> {
    let rows = read_rows(text);
    if rows.is_empty() {
        return Err(Error::Input("data file has no observations".into()));
    }
    Ok(match model {
        ModelId::NormalMean => ModelInstance::NormalMean {
            summary: summarize_normal(&single_column(&rows)?)?,
            sigma: require_sigma(sigma)?,
        },
        ModelId::NormalMeanT => {
            let summary = summarize_normal(&single_column(&rows)?)?;
            if summary.sd.is_none() {
                return Err(Error::Input(
                    "normal-mean-t needs at least 2 observations".into(),
                ));
            }
            ModelInstance::NormalMeanT { summary }
        }
        ModelId::Mnm => ModelInstance::Mnm {
            summary: summarize_vector(&single_column(&rows)?)?,
        },
        ModelId::GammaMean => ModelInstance::GammaMean {
            summary: summarize_gamma(&single_column(&rows)?)?,
        },
        ModelId::MeanRatio => {
            let values: Vec<f64> = rows
                .iter()
                .flat_map(|(line, f)| f.iter().map(move |x| number(x, *line)))
                .collect::<Result<_>>()?;
            if values.len() != 2 {
                return Err(Error::Input(format!(
                    "mean-ratio data must hold exactly two values (x1, x2), found {}",
                    values.len()
                )));
            }
            ModelInstance::MeanRatio {
                data: RatioData::new(values[0], values[1])?,
            }
        }
        ModelId::Correlation => {
            columns(&rows, 2)?;
            let mut x = Vec::with_capacity(rows.len());
            let mut y = Vec::with_capacity(rows.len());
            for (line, f) in &rows {
                x.push(number(&f[0], *line)?);
                y.push(number(&f[1], *line)?);
            }
            ModelInstance::Correlation {
                summary: summarize_pairs(&x, &y)?,
            }
        }
        ModelId::BehrensFisher => {
            if !(group == 1 || group == 2) {
                return Err(Error::Input(format!("--group must be 1 or 2, got {group}")));
            }
            columns(&rows, 2)?;
            let (g, v) = (group - 1, 2 - group);
            let mut labels: Vec<&str> = Vec::new();
            let mut samples: Vec<Vec<f64>> = Vec::new();
            for (line, f) in &rows {
                let x = number(&f[v], *line)?;
                match labels.iter().position(|l| *l == f[g]) {
                    Some(k) => samples[k].push(x),
                    None => {
                        labels.push(&f[g]);
                        samples.push(vec![x]);
                    }
                }
            }
            if labels.len() != 2 {
                return Err(Error::Input(format!(
                    "behrens-fisher data needs exactly two group labels, found {}",
                    labels.len()
                )));
            }
            ModelInstance::BehrensFisher {
                summary: summarize_two_sample(&samples[0], &samples[1])?,
            }
        }
    })
}

pub fn from_file(
    model: ModelId,
    path: &Path,
    sigma: Option<f64>,
    group: usize,
) -> Result<ModelInstance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    from_text(model, &text, sigma, group)
}

/// Parses a comma-separated list.
pub fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| Error::Input(format!("{what}: '{s}' is not a valid value")))
        })
        .collect()
}

/// Parses `lo:hi:count` into `count` equally spaced points.
pub fn parse_grid(text: &str, what: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || Error::Input(format!("{what} must look like lo:hi:count, got '{text}'"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if !(lo.is_finite() && hi.is_finite()) || count == 0 || (count == 1 && lo != hi) || hi < lo {
        return Err(bad());
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..count)
        .map(|k| {
            if k + 1 == count {
                hi
            } else {
                lo + (hi - lo) * k as f64 / (count - 1) as f64
            }
        })
        .collect())
}

/// Parses `a:b,c:d` into pairs of sample sizes.
pub fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let bad = || Error::Input(format!("--pairs entry '{s}' must look like n1:n2"));
            let (a, b) = s.split_once(':').ok_or_else(bad)?;
            Ok((
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ))
        })
        .collect()
}
