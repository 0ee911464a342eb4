//! Staircase diagrams of `(S, k)`.
//!
//! One column per element `x` of `k ∪ k*` (sorted) and one row per integer
//! `0..=c`, row 0 at the bottom. Column `x` is occupied from row `x` upward.
//! Gap rows are shaded, columns whose value is a Betti element are flagged
//! in the header, and each ledger condition marks the cell in the row of its
//! gap and the column of the largest stream in its source element.

use std::collections::BTreeSet;
use std::fmt::Write;

use cusp_strata::certify::{ConditionLedger, ConditionStatus};
use cusp_strata::stratum::{conjecture_report, k_star, StratumInput};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Cell {
    Empty,
    Member,
    Gap,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Marks {
    pub independent: usize,
    pub dependent: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Diagram {
    pub semigroup: String,
    pub profile: Vec<u64>,
    pub columns: Vec<u64>,
    pub betti_columns: Vec<bool>,
    pub conductor: u64,
    pub gap_rows: Vec<u64>,
    /// `cells[s][j]` for row `s` and column `j`.
    pub cells: Vec<Vec<Cell>>,
    pub marks: Vec<Vec<Marks>>,
}

impl Diagram {
    pub fn build(input: &StratumInput, ledger: Option<&ConditionLedger>) -> cusp_strata::Result<Self> {
        let sg = input.semigroup();
        let profile = input.profile().to_vec();
        let mut columns: BTreeSet<u64> = profile.iter().copied().collect();
        columns.extend(k_star(sg, &profile));
        let columns: Vec<u64> = columns.into_iter().collect();
        let betti: BTreeSet<u64> = conjecture_report(input)?.summary.iter().map(|b| b.element).collect();
        let conductor = sg.conductor();
        let cells = (0..=conductor)
            .map(|s| {
                columns
                    .iter()
                    .map(|&x| match (s >= x, sg.contains(s)) {
                        (false, _) => Cell::Empty,
                        (true, true) => Cell::Member,
                        (true, false) => Cell::Gap,
                    })
                    .collect()
            })
            .collect();
        let mut marks = vec![vec![Marks::default(); columns.len()]; conductor as usize + 1];
        for entry in ledger.map(|l| l.entries.as_slice()).unwrap_or_default() {
            let Some(top) = largest_stream(&entry.source) else {
                continue;
            };
            let Some(j) = columns.iter().position(|&x| x == profile[top - 1]) else {
                continue;
            };
            let m = &mut marks[entry.gap as usize][j];
            match entry.status {
                ConditionStatus::Independent => m.independent += 1,
                ConditionStatus::Dependent => m.dependent += 1,
            }
        }
        Ok(Diagram {
            semigroup: sg.to_string(),
            profile,
            betti_columns: columns.iter().map(|x| betti.contains(x)).collect(),
            columns,
            conductor,
            gap_rows: sg.gaps().to_vec(),
            cells,
            marks,
        })
    }

    pub fn to_ascii(&self) -> String {
        let width = self.columns.iter().map(|x| x.to_string().len()).max().unwrap_or(1).max(3) + 1;
        let label = self.conductor.to_string().len().max(1);
        let mut out = String::new();
        writeln!(out, "{} k = {:?}", self.semigroup, self.profile).unwrap();
        let mut header = format!("{:>label$}  |", "");
        for (x, &b) in self.columns.iter().zip(&self.betti_columns) {
            let tag = if b { format!("{x}*") } else { x.to_string() };
            header.push_str(&format!("{tag:>width$}"));
        }
        out.push_str(header.trim_end());
        out.push('\n');
        out.push_str(&format!("{}--+{}\n", "-".repeat(label), "-".repeat(width * self.columns.len())));
        for s in (0..=self.conductor as usize).rev() {
            let shade = if self.gap_rows.contains(&(s as u64)) { '~' } else { ' ' };
            let mut line = format!("{s:>label$}{shade} |");
            for (cell, m) in self.cells[s].iter().zip(&self.marks[s]) {
                let glyph = glyph(*cell, m);
                line.push_str(&format!("{glyph:>width$}"));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out.push_str("legend: . member  ~ gap row  # independent  + dependent  * Betti column\n");
        out
    }

    pub fn to_svg(&self) -> String {
        const CELL: usize = 22;
        const LEFT: usize = 40;
        const TOP: usize = 30;
        let rows = self.conductor as usize + 1;
        let w = LEFT + CELL * self.columns.len() + 10;
        let h = TOP + CELL * rows + 10;
        let mut out = String::new();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="monospace" font-size="11">"#
        )
        .unwrap();
        writeln!(out, "<title>{} k = {:?}</title>", self.semigroup, self.profile).unwrap();
        for (j, (x, &b)) in self.columns.iter().zip(&self.betti_columns).enumerate() {
            let cx = LEFT + j * CELL + CELL / 2;
            let weight = if b { "bold" } else { "normal" };
            writeln!(out, r#"<text x="{cx}" y="{}" text-anchor="middle" font-weight="{weight}">{x}</text>"#, TOP - 8).unwrap();
        }
        for s in 0..rows {
            let y = TOP + (rows - 1 - s) * CELL;
            if self.gap_rows.contains(&(s as u64)) {
                let band = CELL * self.columns.len();
                writeln!(out, r##"<rect x="{LEFT}" y="{y}" width="{band}" height="{CELL}" fill="#eeeeee"/>"##).unwrap();
            }
            writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{s}</text>"#, LEFT - 6, y + CELL / 2 + 4).unwrap();
            for (j, (cell, m)) in self.cells[s].iter().zip(&self.marks[s]).enumerate() {
                let fill = match (cell, m.independent, m.dependent) {
                    (Cell::Empty, _, _) => continue,
                    (_, i, _) if i > 0 => "#f28b82",
                    (_, _, d) if d > 0 => "#a50e0e",
                    (Cell::Gap, _, _) => "#d9d9d9",
                    (Cell::Member, _, _) => "#ffffff",
                };
                let x = LEFT + j * CELL;
                writeln!(
                    out,
                    r##"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="#555555"/>"##
                )
                .unwrap();
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn glyph(cell: Cell, m: &Marks) -> String {
    match (m.independent, m.dependent) {
        (0, 0) => match cell {
            Cell::Empty => String::new(),
            Cell::Member => ".".into(),
            Cell::Gap => "~".into(),
        },
        (1, 0) => "#".into(),
        (i, 0) => format!("#{i}"),
        (0, 1) => "+".into(),
        (0, d) => format!("+{d}"),
        _ => "#+".into(),
    }
}

/// Largest part of `λ` in a source label such as `F*_{21,1}` or `f_{3}`.
fn largest_stream(source: &str) -> Option<usize> {
    let start = source.find("_{")? + 2;
    let rest = &source[start..];
    let end = rest.find([',', '}'])?;
    rest[..end].chars().filter_map(|c| c.to_digit(10)).map(|d| d as usize).max()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn source_labels() {
        assert_eq!(largest_stream("F*_{21,1}"), Some(2));
        assert_eq!(largest_stream("f_{3}"), Some(3));
        assert_eq!(largest_stream("F*_{1113,4}"), Some(3));
        assert_eq!(largest_stream("x"), None);
    }
}
