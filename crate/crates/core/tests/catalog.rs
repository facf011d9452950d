use std::collections::BTreeMap;

use nilsol::algebra::parse_nice_algebra;
use nilsol::catalog::{builtin, emit_table, parse_catalog, read_table_json, run_suite, TableFormat, TableRow};
use nilsol::exactnum::rat;

#[test]
fn small_dimensions_match_table() {
    let entries: Vec<_> = builtin().into_iter().filter(|e| e.dim <= 6).collect();
    assert_eq!(entries.len(), 34);
    let runs = run_suite(&entries, &BTreeMap::new());
    let diffs: Vec<String> = runs.iter().flat_map(|r| r.diffs.iter().map(|d| d.to_string())).collect();
    assert!(diffs.is_empty(), "{diffs:#?}");
}

#[test]
fn obstructed_entries() {
    let entries: Vec<_> = builtin().into_iter().filter(|e| e.group.as_deref() == Some("obstructed")).collect();
    assert_eq!(entries.len(), 16);
    for run in run_suite(&entries, &BTreeMap::new()) {
        assert!(run.diffs.is_empty(), "{:?}", run.diffs);
        assert!(run.report.unwrap().signatures.is_empty());
    }
}

#[test]
fn print_then_parse_is_identity() {
    for e in builtin() {
        for (p, _) in e.runs() {
            let a = e.algebra(&p).unwrap();
            let b = parse_nice_algebra(&a.to_notation(), &BTreeMap::new()).unwrap();
            assert_eq!(a.brackets(), b.brackets(), "{}", e.name);
        }
    }
}

#[test]
fn table_output() {
    let entries: Vec<_> = builtin().into_iter().filter(|e| e.name == "31:1" || e.name == "421:1").collect();
    let runs = run_suite(&entries, &BTreeMap::new());
    let rows: Vec<TableRow> = runs.iter().filter_map(TableRow::from_run).collect();
    let text = emit_table(&rows, TableFormat::Text);
    let first = text.lines().nth(1).unwrap();
    assert!(first.starts_with("31:1 "));
    assert!(first.contains("2/3(1,1,2)") && first.ends_with("{∅,12,13,23}"));
    let json = emit_table(&rows, TableFormat::Json);
    assert_eq!(emit_table(&read_table_json(&json).unwrap(), TableFormat::Json), json);
    assert_eq!(emit_table(&rows, TableFormat::Csv), emit_table(&rows.iter().rev().cloned().collect::<Vec<_>>(), TableFormat::Csv));
}

#[test]
fn sample_override_drops_golden_data() {
    let entries: Vec<_> = builtin().into_iter().filter(|e| e.name == "741:6").collect();
    let runs = run_suite(&entries, &BTreeMap::from([("a".to_string(), vec![rat(-3, 1)])]));
    assert_eq!(runs.len(), 1);
    assert_eq!(runs[0].label(), "741:6[a=-3]");
    assert_eq!(runs[0].report.as_ref().unwrap().signatures.len(), 24);
}

#[test]
fn user_catalog_mismatch_is_reported() {
    let text = r#"{"schema_version":1,"entries":[
        {"name":"h3","dim":3,"differential":["0","0","e^{12}"],"expected":{"N":"1/3(1,1,2)","S":["∅"]}}]}"#;
    let runs = run_suite(&parse_catalog(text).unwrap(), &BTreeMap::new());
    let fields: Vec<&str> = runs[0].diffs.iter().map(|d| d.field).collect();
    assert_eq!(fields, ["N", "S"]);
    assert_eq!(runs[0].diffs[0].to_string(), "h3: N expected 1/3(1,1,2) got 2/3(1,1,2)");
}
