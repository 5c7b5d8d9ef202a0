use gordian::catalog::*;
use gordian::error::CatalogError;

const HEADER: &str = "name,crossing_number,genus,fibered,positive,unknotting,pd,matrix,source\n";

fn names(v: &[CatalogEntry]) -> Vec<&str> {
    let mut n: Vec<&str> = v.iter().map(|e| e.name.as_str()).collect();
    n.sort();
    n
}

#[test]
fn bundled_catalog_is_consistent() {
    let r = ingest_catalog_report(include_str!("../data/catalog.csv")).unwrap();
    assert!(r.rejected.is_empty(), "{:?}", r.rejected);
    assert!(r.entries.len() >= 20);
    // both representations present => the Alexander polynomials agree (checked on ingest)
    let both = r.entries.iter().filter(|e| e.pd.is_some() && e.matrix.is_some()).count();
    assert!(both >= 5);
    let k = r.entries.iter().find(|e| e.name == "K11n183").unwrap();
    assert!(k.pd.as_ref().unwrap().is_positive());
}

#[test]
fn candidate_filter() {
    let cat = bundled_catalog();
    assert_eq!(names(&fibered_positive_candidates(&cat, 2)), ["3_1#3_1", "5_1"]);
    assert_eq!(names(&fibered_positive_candidates(&cat, 1)), ["3_1"]);
    assert!(fibered_positive_candidates(&[], 2).is_empty());
}

#[test]
fn mismatched_row_is_rejected() {
    let text = format!(
        "{}3_1,3,1,yes,yes,1,\"PD[X[2,4,3,1], X[4,6,5,3], X[6,2,1,5]]\",-1 1; 0 -1,ok\n\
         bad,3,1,yes,yes,1,\"PD[X[2,4,3,1], X[4,6,5,3], X[6,2,1,5]]\",1 1; 0 -1,wrong matrix\n",
        HEADER
    );
    let r = ingest_catalog_report(&text).unwrap();
    assert_eq!(r.entries.len(), 1);
    assert_eq!(r.rejected.len(), 1);
    assert_eq!(r.rejected[0].0, 3);
    assert!(r.rejected[0].1.contains("mismatch"));
    assert!(matches!(ingest_catalog(&text), Err(CatalogError::Row { line: 3, .. })));
}

#[test]
fn other_rejections() {
    let rows = [
        "x,5,1,yes,yes,1,,-2 1; 0 -1,not monic",
        "x,3,0,yes,yes,1,,-1 1; 0 -1,genus too small",
        "x,3,1,yes,no,1,\"PD[X[2,4,3,1], X[4,6,5,3], X[6,2,1,5]]\",,positive diagram",
        "x,3,1,maybe,yes,1,,,bad flag",
        "x,3,1,yes,yes,1,,1 1; 1 1,not a Seifert matrix",
    ];
    for row in rows {
        let r = ingest_catalog_report(&format!("{}{}\n", HEADER, row)).unwrap();
        assert_eq!(r.rejected.len(), 1, "{}", row);
    }
}

#[test]
fn empty_and_headers() {
    assert!(ingest_catalog("").unwrap().is_empty());
    assert!(ingest_catalog(HEADER).unwrap().is_empty());
    assert!(matches!(ingest_catalog("name,genus\nx,1\n"), Err(CatalogError::MissingColumn(_))));
    // unknown values are allowed
    let e = ingest_catalog(&format!("{}y,?,,?,,,,,\n", HEADER)).unwrap();
    assert_eq!(e[0].genus, None);
    assert_eq!(e[0].fibered, None);
}
