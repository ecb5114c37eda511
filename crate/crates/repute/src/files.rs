//! Triple files, label files, metadata records and result tables.
//!
//! Triple files hold one `user <sep> object <sep> rating [<sep> ...]` line per
//! rating; trailing fields such as MovieLens timestamps are ignored, blank
//! lines and lines starting with `#` are skipped.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use repute_core::{DatasetBuilder, Id, RatingDataset, RatingScale, SpamExperiment};

use crate::error::{ReputeError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Delimiter {
    /// Any run of tabs or spaces.
    #[default]
    Whitespace,
    Char(char),
}

impl std::str::FromStr for Delimiter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "whitespace" | "ws" => Ok(Delimiter::Whitespace),
            "tab" | "\\t" => Ok(Delimiter::Char('\t')),
            "comma" => Ok(Delimiter::Char(',')),
            _ => {
                let mut chars = s.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => Ok(Delimiter::Char(c)),
                    _ => Err(format!("delimiter must be a single character, got {s:?}")),
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TripleFileFormat {
    pub delimiter: Delimiter,
    pub comment: char,
}

impl Default for TripleFileFormat {
    fn default() -> Self {
        TripleFileFormat { delimiter: Delimiter::Whitespace, comment: '#' }
    }
}

impl TripleFileFormat {
    fn fields<'a>(&self, line: &'a str) -> Vec<&'a str> {
        match self.delimiter {
            Delimiter::Whitespace => line.split_whitespace().collect(),
            Delimiter::Char(c) => line.split(c).map(str::trim).collect(),
        }
    }
}

pub fn read_triples<R: BufRead>(reader: R, format: TripleFileFormat, scale: RatingScale, path: &Path) -> Result<RatingDataset> {
    let mut builder = DatasetBuilder::new(scale);
    for (n, line) in reader.lines().enumerate() {
        let line_no = n + 1;
        let line = line.map_err(|e| ReputeError::io(path, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with(format.comment) {
            continue;
        }
        let parse_err = |message: String| ReputeError::Parse { path: path.to_path_buf(), line: line_no, message };
        let fields = format.fields(trimmed);
        if fields.len() < 3 {
            return Err(parse_err(format!("expected user, object and rating, found {} field(s)", fields.len())));
        }
        let value: f64 = fields[2]
            .parse()
            .map_err(|_| parse_err(format!("unparseable rating {:?}", fields[2])))?;
        builder
            .push(fields[0], fields[1], value)
            .map_err(|e| parse_err(e.to_string()))?;
    }
    builder
        .build()
        .map_err(|source| ReputeError::Dataset { path: path.to_path_buf(), source })
}

pub fn load_triples(path: impl AsRef<Path>, format: TripleFileFormat, scale: RatingScale) -> Result<RatingDataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| ReputeError::io(path, e))?;
    read_triples(BufReader::new(file), format, scale, path)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| ReputeError::io(path, e))
}

/// Tab-separated `user object rating` lines in (user, object) order.
pub fn write_dataset(path: impl AsRef<Path>, dataset: &RatingDataset) -> Result<()> {
    let path = path.as_ref();
    let mut w = create(path)?;
    write_triples(&mut w, dataset).map_err(|e| ReputeError::io(path, e))
}

pub fn write_triples<W: Write>(w: &mut W, dataset: &RatingDataset) -> io::Result<()> {
    for (u, o, v) in dataset.triples() {
        writeln!(w, "{u}\t{o}\t{v}")?;
    }
    w.flush()
}

/// One id per line, in id order.
pub fn write_labels<'a>(path: impl AsRef<Path>, ids: impl IntoIterator<Item = &'a Id>) -> Result<()> {
    let path = path.as_ref();
    let mut ids: Vec<&Id> = ids.into_iter().collect();
    ids.sort();
    ids.dedup();
    let mut w = create(path)?;
    (|| {
        for id in ids {
            writeln!(w, "{id}")?;
        }
        w.flush()
    })()
    .map_err(|e| ReputeError::io(path, e))
}

pub fn read_labels(path: impl AsRef<Path>) -> Result<Vec<Id>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| ReputeError::io(path, e))?;
    let mut ids = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|e| ReputeError::io(path, e))?;
        let t = line.trim();
        if !t.is_empty() && !t.starts_with('#') {
            ids.push(Id::from(t));
        }
    }
    ids.sort();
    ids.dedup();
    Ok(ids)
}

/// Spammer mask over the dataset's users; every label must name a user.
pub fn labels_mask(dataset: &RatingDataset, labels: &[Id]) -> Result<Vec<bool>> {
    let mut mask = vec![false; dataset.user_count()];
    for id in labels {
        let i = dataset
            .user_index(id)
            .ok_or_else(|| ReputeError::UnknownLabel(id.to_string()))?;
        mask[i] = true;
    }
    Ok(mask)
}

/// `key=value` record describing how an attacked dataset was generated.
pub fn write_metadata(path: impl AsRef<Path>, experiment: &SpamExperiment) -> Result<()> {
    let path = path.as_ref();
    let mut w = create(path)?;
    let spec = &experiment.spec;
    (|| {
        writeln!(w, "kind={}", spec.kind)?;
        writeln!(w, "p={}", spec.ratio)?;
        writeln!(w, "d={}", experiment.spammer_count())?;
        writeln!(w, "m={}", experiment.attacked.user_count())?;
        writeln!(w, "seed={}", spec.seed)?;
        writeln!(w, "rounding=floor")?;
        w.flush()
    })()
    .map_err(|e| ReputeError::io(path, e))
}

/// Delimiter-separated table with a header row and optional leading
/// `# ` comment lines.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { comments: Vec::new(), header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        let row: Vec<String> = row.into_iter().map(Into::into).collect();
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_writer<W: Write>(&self, mut w: W) -> Result<()> {
        for c in &self.comments {
            writeln!(w, "# {c}").map_err(|e| ReputeError::io("<table>", e))?;
        }
        let mut csv = csv::WriterBuilder::new().from_writer(w);
        csv.write_record(&self.header)?;
        for row in &self.rows {
            csv.write_record(row)?;
        }
        csv.flush().map_err(|e| ReputeError::io("<table>", e))?;
        Ok(())
    }

    pub fn to_string_lossy(&self) -> String {
        let mut buf = Vec::new();
        self.to_writer(&mut buf).expect("writing to memory");
        String::from_utf8_lossy(&buf).into_owned()
    }
}

pub fn write_table(path: impl AsRef<Path>, table: &Table) -> Result<()> {
    let path = path.as_ref();
    let w = create(path)?;
    table.to_writer(w).map_err(|e| match e {
        ReputeError::Io { source, .. } => ReputeError::io(path, source),
        other => other,
    })
}

/// Reads a table written by [`write_table`], skipping comment lines.
pub fn read_table(path: impl AsRef<Path>) -> Result<Table> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| ReputeError::io(path, e))?;
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .flat_map(|l| [l, "\n"])
        .collect();
    let mut reader = csv::ReaderBuilder::new().from_reader(body.as_bytes());
    let header = reader.headers()?.iter().map(String::from).collect();
    let mut table = Table { comments: Vec::new(), header, rows: Vec::new() };
    for rec in reader.records() {
        table.rows.push(rec?.iter().map(String::from).collect());
    }
    Ok(table)
}
