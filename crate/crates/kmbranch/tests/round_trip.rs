use kmbranch::emit::{emit_table, Format};
use kmbranch::format::TableJson;
use kmbranch_core::{AffineAlgebra, BranchTable};

fn table(u: i64, labels: &[i64], depth: u32, method: Option<kmbranch_core::Method>) -> BranchTable {
    let alg = AffineAlgebra::preset("A1_1").unwrap();
    let lambda = alg.weight(labels).unwrap();
    kmbranch::driver::branch(&alg, &lambda, u, depth, u as u32, method).unwrap()
}

#[test]
fn tables_round_trip_through_json() {
    for t in [table(2, &[1, 0], 3, None), table(3, &[0, 2], 3, Some(kmbranch_core::Method::Steinberg))] {
        let mut bytes = Vec::new();
        emit_table(&t, Format::Json, &mut bytes).unwrap();
        let parsed: TableJson = serde_json::from_slice(&bytes).unwrap();
        let back = BranchTable::try_from(&parsed).unwrap();
        assert_eq!(back, t);
        let mut again = Vec::new();
        emit_table(&back, Format::Json, &mut again).unwrap();
        assert_eq!(again, bytes);
    }
}

#[test]
fn custom_matrix_tables_round_trip() {
    let alg = AffineAlgebra::new(&[vec![2, -2], vec![-2, 2]]).unwrap();
    let lambda = alg.weight(&[1, 1]).unwrap();
    let t = kmbranch::driver::branch(&alg, &lambda, 3, 2, 3, None).unwrap();
    let json = serde_json::to_string(&TableJson::from(&t)).unwrap();
    assert!(!json.contains("\"name\""));
    let back = BranchTable::try_from(&serde_json::from_str::<TableJson>(&json).unwrap()).unwrap();
    assert_eq!(back, t);
}

#[test]
fn unknown_method_names_are_rejected() {
    let t = table(2, &[1, 0], 1, None);
    let mut j = TableJson::from(&t);
    j.rows[0].methods.push("guess".into());
    assert!(BranchTable::try_from(&j).is_err());
}

#[test]
fn pretty_output_lists_every_row() {
    let t = table(2, &[1, 0], 3, None);
    let mut bytes = Vec::new();
    emit_table(&t, Format::Pretty, &mut bytes).unwrap();
    let text = String::from_utf8(bytes).unwrap();
    assert_eq!(text.lines().count(), 3 + t.rows.len());
    assert!(text.contains("verified: true"));
}
