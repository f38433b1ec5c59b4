use std::collections::BTreeMap;

use num_rational::BigRational;
use pade_tilings::oracle::sample_tiling;
use pade_tilings::regions::{
    build_aztec_region, build_hexagon_region, in_aztec, tiling_to_paths, AztecVariant, Domino, DominoTiling,
    HexagonVariant, Tiling,
};
use pade_tilings::shuffling::shuffle_sample;
use pade_tilings_cli::render_svg;
use quick_xml::events::Event;
use quick_xml::Reader;

#[derive(Debug, Default)]
struct Shapes {
    /// `(element, class) -> fills seen`.
    fills: BTreeMap<(String, String), Vec<String>>,
    count: BTreeMap<String, usize>,
}

/// Parses the whole document, failing on malformed XML.
fn shapes(svg: &str) -> Shapes {
    let mut reader = Reader::from_str(svg);
    let mut out = Shapes::default();
    let mut depth = 0i32;
    loop {
        match reader.read_event().expect("well-formed XML") {
            Event::Eof => break,
            Event::Start(e) => {
                assert_eq!(e.name().as_ref(), b"svg");
                depth += 1;
            }
            Event::End(_) => depth -= 1,
            Event::Empty(e) => {
                let name = String::from_utf8(e.name().as_ref().to_vec()).unwrap();
                let mut class = String::new();
                let mut fill = String::new();
                for attr in e.attributes() {
                    let attr = attr.unwrap();
                    let value = attr.unescape_value().unwrap().into_owned();
                    match attr.key.as_ref() {
                        b"class" => class = value,
                        b"fill" => fill = value,
                        _ => {}
                    }
                }
                *out.count.entry(name.clone()).or_default() += 1;
                let fills = out.fills.entry((name, class)).or_default();
                if !fills.contains(&fill) {
                    fills.push(fill);
                }
            }
            _ => {}
        }
    }
    assert_eq!(depth, 0);
    out
}

#[test]
fn frozen_diamond_is_red_and_yellow() {
    let n = 3;
    let mut dominoes = Vec::new();
    for j in -n..n {
        let mut i = -n;
        while i < n {
            if in_aztec(n, i, j) {
                dominoes.push(Domino::horizontal(i, j));
                i += 2;
            } else {
                i += 1;
            }
        }
    }
    let tiling = DominoTiling::new(n, dominoes);
    tiling.validate(&build_aztec_region(n, &AztecVariant::Full).unwrap()).unwrap();
    let s = shapes(&render_svg(&Tiling::Domino(tiling), None));
    assert_eq!(s.count.get("rect"), Some(&12));
    assert_eq!(s.count.len(), 1);
    for ((_, class), fills) in &s.fills {
        match class.as_str() {
            "N" => assert_eq!(fills, &["red"]),
            "S" => assert_eq!(fills, &["yellow"]),
            other => panic!("unexpected class {other}"),
        }
    }
}

#[test]
fn large_shuffled_diamond_renders() {
    let tiling = Tiling::Domino(shuffle_sample(50, &BigRational::from_integer(1.into()), 1).unwrap());
    let paths = tiling_to_paths(&tiling).unwrap();
    let s = shapes(&render_svg(&tiling, Some(&paths)));
    assert_eq!(s.count["rect"], 50 * 51);
    assert_eq!(s.count["polyline"], 50);
    let colors: BTreeMap<&str, &str> = [("N", "red"), ("S", "yellow"), ("E", "green"), ("W", "blue")].into();
    for ((elem, class), fills) in &s.fills {
        if elem == "rect" {
            assert_eq!(fills, &[colors[class.as_str()]]);
        }
    }
    for class in colors.keys() {
        assert!(s.fills.contains_key(&("rect".to_string(), class.to_string())));
    }
}

#[test]
fn hexagon_shows_three_lozenge_shapes() {
    let region = build_hexagon_region(14, 5, 6, &HexagonVariant::Full).unwrap();
    let tiling = sample_tiling(&region, &BigRational::from_integer(1.into()), 3).unwrap();
    let paths = tiling_to_paths(&tiling).unwrap();
    let s = shapes(&render_svg(&tiling, Some(&paths)));
    // Each lozenge covers two triangles.
    assert_eq!(s.count["polygon"], region.len() / 2);
    assert_eq!(s.count["polyline"], 6);
    let kinds: Vec<&str> = s.fills.keys().filter(|(e, _)| e == "polygon").map(|(_, c)| c.as_str()).collect();
    assert_eq!(kinds, ["A", "B", "C"]);
    for ((elem, _), fills) in &s.fills {
        if elem == "polygon" {
            assert_eq!(fills.len(), 1);
        }
    }
}

#[test]
fn reduced_tilings_render() {
    let region = build_aztec_region(6, &AztecVariant::Reduced { m: 4, k: 1 }).unwrap();
    let tiling = sample_tiling(&region, &BigRational::new(1.into(), 2.into()), 9).unwrap();
    let paths = tiling_to_paths(&tiling).unwrap();
    let s = shapes(&render_svg(&tiling, Some(&paths)));
    assert_eq!(s.count["rect"], region.len() / 2);
    assert_eq!(s.count["polyline"], 6);
}
