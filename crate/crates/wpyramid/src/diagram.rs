//! Plain-text box diagrams of pyramids and tableaux.

use wpyramid_core::pyramid::{Pyramid, ShiftMatrix};
use wpyramid_core::tableaux::Tableau;

/// Draw the pyramid with one label per box, rows top to bottom.
pub fn draw_labels(py: &Pyramid, label: impl Fn(usize) -> String) -> String {
    let n = py.n_rows();
    let labels: Vec<String> = (1..=py.n_boxes()).map(&label).collect();
    let w = labels.iter().map(String::len).max().unwrap_or(1) + 2;
    // columns covered by row r (1-based), as a half-open range of 0-based columns
    let span = |r: usize| {
        let o = py.offsets()[r - 1];
        o..o + py.row_len(r)
    };
    let border = |cols: &[std::ops::Range<usize>]| {
        let lo = cols.iter().map(|c| c.start).min().unwrap_or(0);
        let hi = cols.iter().map(|c| c.end).max().unwrap_or(0);
        let mut s = " ".repeat(lo * (w + 1));
        for _ in lo..hi {
            s.push('+');
            s.push_str(&"-".repeat(w));
        }
        s.push('+');
        s
    };
    let mut out = String::new();
    for r in 1..=n {
        let above = if r == 1 { vec![span(1)] } else { vec![span(r - 1), span(r)] };
        out.push_str(&border(&above));
        out.push('\n');
        let sp = span(r);
        let mut line = " ".repeat(sp.start * (w + 1));
        for &b in py.row_boxes(r) {
            line.push('|');
            line.push_str(&format!("{:^w$}", labels[b - 1]));
        }
        line.push('|');
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(&border(&[span(n)]));
    out.push('\n');
    out
}

/// Boxes numbered along rows, top to bottom.
pub fn draw_pyramid(py: &Pyramid) -> String {
    draw_labels(py, |b| b.to_string())
}

pub fn draw_tableau(a: &Tableau) -> String {
    draw_labels(a.pyramid(), |b| a.entry(b).to_string())
}

pub fn draw_shift_matrix(s: &ShiftMatrix) -> String {
    let w = s.rows().iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for row in s.rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>w$}")).collect();
        out.push_str(&format!("( {} )\n", cells.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use wpyramid_core::pyramid::Partition;

    #[test]
    fn two_five_left() {
        let py = Pyramid::left_justified(Partition::new(vec![2, 5]).unwrap());
        let want = "\
+---+---+
| 1 | 2 |
+---+---+---+---+---+
| 3 | 4 | 5 | 6 | 7 |
+---+---+---+---+---+
";
        assert_eq!(draw_pyramid(&py), want);
    }

    #[test]
    fn indented_row() {
        let py = Pyramid::new(Partition::new(vec![1, 3]).unwrap(), vec![1, 0]).unwrap();
        let want = "    +---+
    | 1 |
+---+---+---+
| 2 | 3 | 4 |
+---+---+---+
";
        assert_eq!(draw_pyramid(&py), want);
        assert_eq!(draw_shift_matrix(&py.shift_matrix()), "( 0 1 )\n( 1 0 )\n");
    }
}
