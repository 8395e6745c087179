//! The `pyramids` command.

use serde::Serialize;
use wpyramid_core::pyramid::{LieDatum, Partition, Pyramid};

use crate::diagram::{draw_pyramid, draw_shift_matrix};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PyramidInfo {
    pub offsets: Vec<usize>,
    pub shift_matrix: Vec<Vec<usize>>,
    /// Pairs `(i, j)` with `e[i,j]` a summand of `e`.
    pub e_support: Vec<(usize, usize)>,
    pub d_chi: usize,
    pub diagram: String,
}

pub fn pyramid_info(py: &Pyramid) -> PyramidInfo {
    let lie = LieDatum::new(py);
    PyramidInfo {
        offsets: py.offsets().to_vec(),
        shift_matrix: py.shift_matrix().rows().to_vec(),
        e_support: lie.e_support().to_vec(),
        d_chi: lie.d_chi(),
        diagram: draw_pyramid(py),
    }
}

/// Every pyramid of the partition: the text listing and the report.
pub fn cmd_pyramids(partition: &Partition) -> (String, Report) {
    let pyramids = Pyramid::enumerate(partition);
    let mut text = String::new();
    let parts: Vec<String> = partition.parts().iter().map(ToString::to_string).collect();
    text.push_str(&format!("partition ({}): {} pyramids\n", parts.join(","), pyramids.len()));
    for (k, py) in pyramids.iter().enumerate() {
        text.push_str(&format!("\n#{} offsets {:?}\n", k + 1, py.offsets()));
        text.push_str(&draw_pyramid(py));
        text.push_str("shift matrix\n");
        text.push_str(&draw_shift_matrix(&py.shift_matrix()));
    }
    let config = serde_json::json!({ "partition": partition.parts() });
    let mut report = Report::new("pyramids", 0, &config, Vec::new());
    let infos: Vec<PyramidInfo> = pyramids.iter().map(pyramid_info).collect();
    report.data.insert("pyramids".into(), serde_json::to_value(infos).expect("pyramids serialize"));
    (text, report)
}
