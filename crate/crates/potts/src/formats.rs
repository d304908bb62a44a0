//! Text file formats.
//!
//! | format | header | body |
//! |--------|--------|------|
//! | LMAP v1 | `LMAP <rows> <cols> <L>` | `rows × cols` integer labels, row-major |
//! | RIMG v1 | `RIMG <rows> <cols>` | `rows × cols` decimal reals, row-major |
//! | EMIT | `EMIT <L> <sigma>` | `L` class means |
//!
//! The header occupies the first line; body tokens may be split across
//! lines in any way. Writers put one grid row per line and print reals in
//! the shortest form that parses back to the same `f64`, so parsing and
//! re-serializing a written file reproduces it byte for byte.
//!
//! Readers report the line and the 1-based token position of the first
//! offending token.

use std::fmt::{Display, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use potts_core::{EmissionModel, GridDims, LabelField, RadiometricImage};

#[derive(Debug, thiserror::Error)]
#[error("line {line}, token {token}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub token: usize,
    pub message: String,
}

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    position: usize,
}

/// Whitespace tokenizer that remembers where each token came from.
struct Tokens<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
    current: Option<(usize, std::str::SplitWhitespace<'a>)>,
    position: usize,
    last_line: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        Self { lines: text.lines().enumerate(), current: None, position: 0, last_line: 1 }
    }

    fn next(&mut self) -> Option<Token<'a>> {
        loop {
            if let Some((line, words)) = &mut self.current {
                if let Some(text) = words.next() {
                    self.position += 1;
                    return Some(Token { text, line: *line, position: self.position });
                }
            }
            let (i, line) = self.lines.next()?;
            self.last_line = i + 1;
            self.current = Some((i + 1, line.split_whitespace()));
        }
    }

    fn error_at(&self, token: &Token<'_>, message: impl Into<String>) -> ParseError {
        ParseError { line: token.line, token: token.position, message: message.into() }
    }

    fn expect(&mut self, what: &str) -> Result<Token<'a>, ParseError> {
        self.next().ok_or_else(|| ParseError {
            line: self.last_line,
            token: self.position + 1,
            message: format!("unexpected end of input, expected {what}"),
        })
    }

    fn parse<T: FromStr>(&mut self, what: &str) -> Result<(T, Token<'a>), ParseError> {
        let token = self.expect(what)?;
        match token.text.parse() {
            Ok(v) => Ok((v, token)),
            Err(_) => Err(self.error_at(&token, format!("expected {what}, found {:?}", token.text))),
        }
    }

    fn magic(&mut self, magic: &str) -> Result<(), ParseError> {
        let token = self.expect(magic)?;
        if token.text != magic {
            return Err(self.error_at(&token, format!("expected header {magic:?}, found {:?}", token.text)));
        }
        Ok(())
    }

    /// Header fields must all sit on the first line.
    fn header_field<T: FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        let (v, token) = self.parse(what)?;
        if token.line != 1 {
            return Err(self.error_at(&token, format!("header is missing {what}")));
        }
        Ok(v)
    }

    fn end_of_header(&mut self) -> Result<(), ParseError> {
        self.end_of_line(1, "header")
    }

    fn end_of_line(&mut self, line: usize, what: &str) -> Result<(), ParseError> {
        if let Some((l, words)) = &mut self.current {
            if *l == line {
                if let Some(text) = words.next() {
                    self.position += 1;
                    return Err(ParseError {
                        line,
                        token: self.position,
                        message: format!("unexpected token {text:?} after {what}"),
                    });
                }
            }
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.next() {
            None => Ok(()),
            Some(token) => Err(self.error_at(&token, format!("unexpected trailing token {:?}", token.text))),
        }
    }
}

fn grid_dims(rows: usize, cols: usize) -> Result<GridDims, ParseError> {
    GridDims::new(rows, cols).map_err(|e| ParseError { line: 1, token: 2, message: e.to_string() })
}

pub fn parse_lmap(text: &str) -> Result<LabelField, ParseError> {
    let mut t = Tokens::new(text);
    t.magic("LMAP")?;
    let rows = t.header_field("row count")?;
    let cols = t.header_field("column count")?;
    let num_classes: usize = t.header_field("class count")?;
    t.end_of_header()?;
    let dims = grid_dims(rows, cols)?;
    if !(2..=65536).contains(&num_classes) {
        return Err(ParseError {
            line: 1,
            token: 4,
            message: format!("class count must be in 2..=65536, got {num_classes}"),
        });
    }
    let mut labels = Vec::with_capacity(dims.len());
    for _ in 0..dims.len() {
        let (label, token): (u32, _) = t.parse("label")?;
        if label as usize >= num_classes {
            return Err(t.error_at(&token, format!("label {label} out of range for {num_classes} classes")));
        }
        labels.push(label as u16);
    }
    t.finish()?;
    Ok(LabelField::new(dims, num_classes, labels).expect("validated above"))
}

pub fn parse_rimg(text: &str) -> Result<RadiometricImage, ParseError> {
    let mut t = Tokens::new(text);
    t.magic("RIMG")?;
    let rows = t.header_field("row count")?;
    let cols = t.header_field("column count")?;
    t.end_of_header()?;
    let dims = grid_dims(rows, cols)?;
    let mut values = Vec::with_capacity(dims.len());
    for _ in 0..dims.len() {
        let (v, token): (f64, _) = t.parse("real value")?;
        if !v.is_finite() {
            return Err(t.error_at(&token, format!("value {:?} is not finite", token.text)));
        }
        values.push(v);
    }
    t.finish()?;
    Ok(RadiometricImage::new(dims, values).expect("validated above"))
}

pub fn parse_emit(text: &str) -> Result<EmissionModel, ParseError> {
    let mut t = Tokens::new(text);
    t.magic("EMIT")?;
    let num_classes: usize = t.header_field("class count")?;
    let (sigma, sigma_token): (f64, _) = t.parse("sigma")?;
    if sigma_token.line != 1 {
        return Err(t.error_at(&sigma_token, "header is missing sigma"));
    }
    t.end_of_header()?;
    if !(2..=65536).contains(&num_classes) {
        return Err(ParseError {
            line: 1,
            token: 2,
            message: format!("class count must be in 2..=65536, got {num_classes}"),
        });
    }
    let mut means = Vec::with_capacity(num_classes);
    for _ in 0..num_classes {
        let (m, token): (f64, _) = t.parse("class mean")?;
        if !m.is_finite() {
            return Err(t.error_at(&token, format!("mean {:?} is not finite", token.text)));
        }
        means.push(m);
    }
    t.finish()?;
    EmissionModel::new(means, sigma).map_err(|e| t.error_at(&sigma_token, e.to_string()))
}

/// Shortest decimal text that parses back to the same `f64`, switching to
/// exponent notation for very large or small magnitudes.
#[derive(Debug, Clone, Copy)]
pub struct Real(pub f64);

impl Display for Real {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn write_rows<T: Display>(out: &mut String, cols: usize, values: &[T]) {
    for row in values.chunks(cols) {
        for (i, v) in row.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            write!(out, "{v}").unwrap();
        }
        out.push('\n');
    }
}

pub fn format_lmap(field: &LabelField) -> String {
    let d = field.dims();
    let mut out = format!("LMAP {} {} {}\n", d.rows(), d.cols(), field.num_classes());
    write_rows(&mut out, d.cols(), field.labels());
    out
}

pub fn format_rimg(image: &RadiometricImage) -> String {
    let d = image.dims();
    let mut out = format!("RIMG {} {}\n", d.rows(), d.cols());
    let values: Vec<Real> = image.values().iter().map(|&v| Real(v)).collect();
    write_rows(&mut out, d.cols(), &values);
    out
}

pub fn format_emit(model: &EmissionModel) -> String {
    let mut out = format!("EMIT {} {}\n", model.num_classes(), Real(model.sigma()));
    let means: Vec<Real> = model.means().iter().map(|&m| Real(m)).collect();
    write_rows(&mut out, model.num_classes(), &means);
    out
}

fn read_with<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T, ParseError>) -> Result<T, FileError> {
    let text = fs::read_to_string(path).map_err(|source| FileError::Io { path: path.to_owned(), source })?;
    parse(&text).map_err(|source| FileError::Parse { path: path.to_owned(), source })
}

pub fn read_lmap(path: &Path) -> Result<LabelField, FileError> {
    read_with(path, parse_lmap)
}

pub fn read_rimg(path: &Path) -> Result<RadiometricImage, FileError> {
    read_with(path, parse_rimg)
}

pub fn read_emit(path: &Path) -> Result<EmissionModel, FileError> {
    read_with(path, parse_emit)
}

pub fn write_text(path: &Path, text: &str) -> Result<(), FileError> {
    fs::write(path, text).map_err(|source| FileError::Io { path: path.to_owned(), source })
}

/// `<out>.meta` next to an output file.
pub fn meta_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta");
    PathBuf::from(name)
}

/// Writes `key=value` lines to the sidecar of `out`.
pub fn write_meta(out: &Path, entries: &[(&str, String)]) -> Result<(), FileError> {
    let mut text = String::new();
    for (k, v) in entries {
        writeln!(text, "{k}={v}").unwrap();
    }
    write_text(&meta_path(out), &text)
}
