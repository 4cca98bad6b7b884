//! Shared input builders for the benchmark targets.

use rdsforge::function::{family_paper_cubic, family_x3x4};
use rdsforge::{FieldSpec, ValueTable};

pub fn field(n: u32) -> FieldSpec {
    FieldSpec::make_field(n).expect("degree in range")
}

pub fn cubic_family(n: u32) -> ValueTable {
    family_paper_cubic(field(n), 1).expect("odd degree")
}

pub fn x3x4(n: u32) -> ValueTable {
    family_x3x4(field(n)).expect("odd degree")
}
