use serde::{Deserialize, Serialize, Serializer};

use super::lattice::Lattice;
use super::polygon::CSPolygon;
use super::rat::{fmt_rat, Rat, Rat2};
use super::GeomError;

pub fn ser_rat<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(r))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolygonDoc {
    vertices: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeDoc {
    basis: [[String; 2]; 2],
}

pub fn polygon_to_value(p: &CSPolygon) -> serde_json::Value {
    serde_json::to_value(PolygonDoc {
        vertices: p.vertices().iter().map(Rat2::strings).collect(),
    })
    .expect("plain strings serialize")
}

pub fn polygon_to_json(p: &CSPolygon) -> String {
    polygon_to_value(p).to_string()
}

pub fn polygon_from_value(v: serde_json::Value) -> Result<CSPolygon, GeomError> {
    let doc: PolygonDoc = serde_json::from_value(v).map_err(|e| GeomError::Parse(e.to_string()))?;
    let pts = doc
        .vertices
        .iter()
        .map(|[x, y]| Rat2::parse(x, y))
        .collect::<Result<Vec<_>, _>>()?;
    CSPolygon::from_points(&pts)
}

pub fn polygon_from_json(s: &str) -> Result<CSPolygon, GeomError> {
    let v: serde_json::Value =
        serde_json::from_str(s).map_err(|e| GeomError::Parse(e.to_string()))?;
    polygon_from_value(v)
}

pub fn lattice_to_value(l: &Lattice) -> serde_json::Value {
    let [b1, b2] = l.basis();
    serde_json::to_value(LatticeDoc {
        basis: [b1.strings(), b2.strings()],
    })
    .expect("plain strings serialize")
}

pub fn lattice_to_json(l: &Lattice) -> String {
    lattice_to_value(l).to_string()
}

pub fn lattice_from_json(s: &str) -> Result<Lattice, GeomError> {
    let doc: LatticeDoc = serde_json::from_str(s).map_err(|e| GeomError::Parse(e.to_string()))?;
    let [[a, b], [c, d]] = &doc.basis;
    Lattice::new(Rat2::parse(a, b)?, Rat2::parse(c, d)?)
}

pub fn rats_to_strings(v: &[Rat2]) -> Vec<[String; 2]> {
    v.iter().map(Rat2::strings).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let s = r#"{"vertices":[["1/2","-2"],["3/2","-2"],["5/3","1/7"],["-1/2","2"],["-3/2","2"],["-5/3","-1/7"]]}"#;
        let p = polygon_from_json(s).unwrap();
        let out = polygon_to_json(&p);
        assert_eq!(polygon_from_json(&out).unwrap(), p);
        assert_eq!(polygon_to_json(&polygon_from_json(&out).unwrap()), out);
        let l = lattice_from_json(r#"{"basis":[["1","0"],["1/2","1/2"]]}"#).unwrap();
        let ls = lattice_to_json(&l);
        assert_eq!(lattice_to_json(&lattice_from_json(&ls).unwrap()), ls);
    }

    #[test]
    fn malformed() {
        assert!(polygon_from_json(r#"{"vertices":[["1","0"]"#).is_err());
        assert!(polygon_from_json(r#"{"vertices":[["0.5","0"]]}"#).is_err());
        assert!(lattice_from_json(r#"{"basis":[["1","2"],["2","4"]]}"#).is_err());
    }
}
