//! Runs the fuzz entry points over the checked-in corpus seeds and random
//! mutations of them. Malformed input must be rejected, never panic.

use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;

use sspgraph::document::Document;
use sspgraph::formats::{parse_edge_list, parse_graph6, to_edge_list, to_graph6};
use sspgraph::RatMatrix;

fn corpus(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut seeds: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    seeds.sort();
    assert!(!seeds.is_empty(), "no seeds for {target}");
    seeds
}

fn graph6_target(data: &str) {
    if let Ok(g) = parse_graph6(data) {
        assert_eq!(to_graph6(&g).unwrap(), data);
    }
}

fn edge_list_target(data: &str) {
    if let Ok(g) = parse_edge_list(data) {
        assert_eq!(parse_edge_list(&to_edge_list(&g)).as_ref(), Ok(&g));
    }
}

fn matrix_target(data: &str) {
    if let Ok(m) = RatMatrix::parse_text(data) {
        assert_eq!(RatMatrix::parse_text(&m.to_text()).as_ref(), Ok(&m));
    }
}

fn document_target(data: &str) {
    if let Ok(doc) = Document::from_json(data) {
        let _ = doc.replay();
    }
}

#[test]
fn seeds_are_accepted() {
    for s in corpus("parse_graph6") {
        parse_graph6(&s).unwrap();
    }
    for s in corpus("parse_edge_list") {
        parse_edge_list(&s).unwrap();
    }
    for s in corpus("parse_matrix") {
        RatMatrix::parse_text(&s).unwrap();
    }
    for s in corpus("parse_document") {
        Document::from_json(&s).unwrap().replay().unwrap();
    }
}

#[test]
fn hostile_documents() {
    let cases = [
        // Vertices beyond the graph or the 128-vertex cap.
        r#"{"kind":"membership","graph":{"n":3,"edges":[]},"proof":{"basis":"join","left":[0,500],"right":[1],"left_proof":{"basis":"complete"}}}"#,
        r#"{"kind":"membership","graph":{"n":200,"edges":[]},"proof":{"basis":"complete"}}"#,
        r#"{"kind":"membership","graph":{"n":2,"edges":[]},"proof":{"basis":"known-table","entry":"c4-pendant","map":[9,9,9,9,9]}}"#,
        r#"{"kind":"forcing-certificate","base":{"n":3,"edges":[[0,1]]},"steps":[{"rule":"SpiderForce","spider":{"center":0,"legs":[[1],[2,300],[]]},"h":1,"added":[[0,1]]}],"final_graph":{"n":3,"edges":[[0,1]]}}"#,
        r#"{"kind":"forcing-certificate","base":{"n":3,"edges":[[0,1]]},"steps":[{"rule":"OddCycleForce","vertex":999,"cycle":[1000],"added":[[0,2]]}],"final_graph":{"n":3,"edges":[[0,1]]}}"#,
        r#"{"kind":"forcing-certificate","base":{"n":3,"edges":[[0,1]]},"steps":[{"rule":"EdgeForce","via":[0,1],"pivot":77,"added":[[0,2]]}],"final_graph":{"n":3,"edges":[[0,1],[0,2]]}}"#,
        r#"{"kind":"witness","graph":{"n":2,"edges":[[0,1]]},"a":[["1"]],"x":[["0","1"],["1","0"]],"provenance":"x"}"#,
        r#"{"kind":"witness","graph":{"n":2,"edges":[[0,1]]},"a":[["1","1"],["1"]],"x":[],"provenance":"x"}"#,
        r#"{"kind":"property-witness","matrix":[["1","2"],["3","4"]],"property":"ssp","x":[["0"]]}"#,
        r#"{"kind":"property-witness","matrix":[["1/0"]],"property":"sap","x":[["0"]]}"#,
    ];
    for c in cases {
        document_target(c);
        if let Ok(doc) = Document::from_json(c) {
            assert!(doc.replay().is_err(), "{c}");
        }
    }
}

#[test]
fn huge_matrix_header_is_cheap() {
    assert!(RatMatrix::parse_text("4096 4096 1").is_err());
    assert!(RatMatrix::parse_text("99999999999 99999999999").is_err());
}

fn mutate(seed: &str, edits: &[(usize, u8)]) -> String {
    let mut bytes = seed.as_bytes().to_vec();
    for &(pos, b) in edits {
        if bytes.is_empty() {
            bytes.push(b);
            continue;
        }
        let i = pos % (bytes.len() + 1);
        match b % 3 {
            0 if i < bytes.len() => bytes[i] = b,
            1 if i < bytes.len() => {
                bytes.remove(i);
            }
            _ => bytes.insert(i, b),
        }
    }
    String::from_utf8_lossy(&bytes).into_owned()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn mutated_seeds_do_not_panic(
        which in 0usize..64,
        edits in proptest::collection::vec((any::<usize>(), any::<u8>()), 0..6),
    ) {
        let targets: [(&str, fn(&str)); 4] = [
            ("parse_graph6", graph6_target),
            ("parse_edge_list", edge_list_target),
            ("parse_matrix", matrix_target),
            ("parse_document", document_target),
        ];
        for (name, run) in targets {
            let seeds = corpus(name);
            run(&mutate(&seeds[which % seeds.len()], &edits));
        }
    }

    #[test]
    fn arbitrary_text_does_not_panic(s in "\\PC{0,64}") {
        graph6_target(&s);
        edge_list_target(&s);
        matrix_target(&s);
        document_target(&s);
    }
}
