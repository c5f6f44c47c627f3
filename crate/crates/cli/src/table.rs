//! CSV output: header row, comma separators, LF line endings, floats with 17
//! significant digits so a value survives a text round trip unchanged.

pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else {
        format!("{x:.16e}")
    }
}

pub struct Table {
    header: Vec<&'static str>,
    body: String,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), body: String::new() }
    }

    /// Appends one row of preformatted cells.
    pub fn push(&mut self, cells: &[String]) {
        assert_eq!(cells.len(), self.header.len(), "row width does not match header");
        self.body.push_str(&cells.join(","));
        self.body.push('\n');
    }

    pub fn push_floats(&mut self, values: &[f64]) {
        let cells: Vec<String> = values.iter().copied().map(format_float).collect();
        self.push(&cells);
    }

    pub fn finish(self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        out.push_str(&self.body);
        out
    }
}
