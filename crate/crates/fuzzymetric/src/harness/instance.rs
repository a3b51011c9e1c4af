//! Line-oriented instance files: one JSON record per line.
//!
//! Each record is `{space, kind, payload, metadata}`. Floats are written
//! with 17 significant digits so parsing an emitted file reproduces every
//! value bit for bit; infinities are the strings `"inf"` and `"-inf"`.

use std::io;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::compactness::FuzzyFamily;
use crate::convergence::FuzzySeqWindow;
use crate::error::{Error, Result};
use crate::fuzzy::StepFuzzySet;
use crate::metric::{GroundSpace, Point, PointCloud};
use crate::sets::{GroundSet, Interval};

/// Identifier of the seeded generator recorded in metadata.
pub const RNG_ID: &str = "chacha8";

/// What a record holds.
#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Set(GroundSet),
    Fuzzy(StepFuzzySet),
    Family(FuzzyFamily),
    /// A window with an optional candidate limit.
    Sequence { window: FuzzySeqWindow, limit: Option<StepFuzzySet> },
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Set(_) => "set",
            Instance::Fuzzy(_) => "fuzzy",
            Instance::Family(_) => "family",
            Instance::Sequence { .. } => "sequence",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    pub seed: Option<u64>,
    pub generator: String,
    /// Whether the space was validated (triangle inequality for point clouds).
    pub validated: bool,
    pub rng: String,
}

impl Metadata {
    pub fn new(generator: impl Into<String>, seed: Option<u64>) -> Self {
        Self { seed, generator: generator.into(), validated: true, rng: RNG_ID.into() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceRecord {
    pub space: Arc<GroundSpace>,
    pub instance: Instance,
    pub metadata: Metadata,
}

/// A float that may be infinite.
#[derive(Clone, Copy, Debug)]
struct Num(f64);

impl Serialize for Num {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            f64::INFINITY => s.serialize_str("inf"),
            f64::NEG_INFINITY => s.serialize_str("-inf"),
            v if v.is_nan() => Err(serde::ser::Error::custom("NaN is not representable")),
            v => s.serialize_f64(v),
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            F(f64),
            S(String),
        }
        match Repr::deserialize(d)? {
            Repr::F(v) => Ok(Num(v)),
            Repr::S(s) if s == "inf" => Ok(Num(f64::INFINITY)),
            Repr::S(s) if s == "-inf" => Ok(Num(f64::NEG_INFINITY)),
            Repr::S(s) => Err(serde::de::Error::custom(format!("expected a number, found {s:?}"))),
        }
    }
}

fn nums(v: &[f64]) -> Vec<Num> {
    v.iter().copied().map(Num).collect()
}

fn floats(v: Vec<Num>) -> Vec<f64> {
    v.into_iter().map(|n| n.0).collect()
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum SpaceJson {
    RealLine,
    Euclidean { dim: usize },
    PointCloud { table: Vec<Vec<Num>> },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PointJson {
    Id(usize),
    Coords(Vec<Num>),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum SetJson {
    Empty,
    Points { points: Vec<PointJson> },
    Intervals { intervals: Vec<[Num; 2]> },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FuzzyJson {
    levels: Vec<Num>,
    cuts: Vec<SetJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyJson {
    members: Vec<FuzzyJson>,
    height_tag: Option<Num>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceJson {
    members: Vec<FuzzyJson>,
    tail_start: usize,
    limit: Option<FuzzyJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordJson {
    space: SpaceJson,
    kind: String,
    payload: Value,
    metadata: Metadata,
}

fn space_json(s: &GroundSpace) -> SpaceJson {
    match s {
        GroundSpace::RealLine => SpaceJson::RealLine,
        GroundSpace::EuclideanRm { dim } => SpaceJson::Euclidean { dim: *dim },
        GroundSpace::PointCloud(c) => SpaceJson::PointCloud { table: c.rows().iter().map(|r| nums(r)).collect() },
    }
}

fn space_from(j: SpaceJson, validated: bool) -> Result<GroundSpace> {
    match j {
        SpaceJson::RealLine => Ok(GroundSpace::RealLine),
        SpaceJson::Euclidean { dim } => GroundSpace::euclidean(dim),
        SpaceJson::PointCloud { table } => {
            let table: Vec<Vec<f64>> = table.into_iter().map(floats).collect();
            let cloud = if validated { PointCloud::new(table)? } else { PointCloud::new_unvalidated(table)? };
            Ok(GroundSpace::PointCloud(cloud))
        }
    }
}

fn set_json(s: &GroundSet) -> SetJson {
    match s {
        GroundSet::Empty => SetJson::Empty,
        GroundSet::Points(ps) => SetJson::Points {
            points: ps
                .iter()
                .map(|p| match p {
                    Point::Id(i) => PointJson::Id(*i),
                    Point::Coords(c) => PointJson::Coords(nums(c)),
                })
                .collect(),
        },
        GroundSet::Intervals(iv) => SetJson::Intervals { intervals: iv.iter().map(|i| [Num(i.lo), Num(i.hi)]).collect() },
    }
}

fn set_from(space: &GroundSpace, j: SetJson) -> Result<GroundSet> {
    let s = match j {
        SetJson::Empty => GroundSet::Empty,
        SetJson::Points { points } => GroundSet::points(points.into_iter().map(|p| match p {
            PointJson::Id(i) => Point::Id(i),
            PointJson::Coords(c) => Point::Coords(floats(c)),
        })),
        SetJson::Intervals { intervals } => {
            GroundSet::intervals(intervals.into_iter().map(|[lo, hi]| Interval::new(lo.0, hi.0)).collect::<Result<Vec<_>>>()?)
        }
    };
    s.check_in(space)?;
    Ok(s)
}

fn fuzzy_json(u: &StepFuzzySet) -> FuzzyJson {
    FuzzyJson { levels: nums(u.levels()), cuts: u.cuts().iter().map(set_json).collect() }
}

fn fuzzy_from(space: &Arc<GroundSpace>, j: FuzzyJson) -> Result<StepFuzzySet> {
    let cuts = j.cuts.into_iter().map(|c| set_from(space, c)).collect::<Result<Vec<_>>>()?;
    StepFuzzySet::from_cuts(space.clone(), floats(j.levels), cuts)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("instance payloads hold no NaN")
}

/// Writes floats with 17 significant digits.
struct SigFormatter;

impl serde_json::ser::Formatter for SigFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }
}

/// Serializes `value` as one JSON line with 17-significant-digit floats.
pub fn to_line<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFormatter);
    value.serialize(&mut ser).expect("serializing to memory cannot fail");
    String::from_utf8(out).expect("serde_json writes UTF-8")
}

/// One record as a single line (no trailing newline).
pub fn emit_record(r: &InstanceRecord) -> String {
    let payload = match &r.instance {
        Instance::Set(s) => to_value(&set_json(s)),
        Instance::Fuzzy(u) => to_value(&fuzzy_json(u)),
        Instance::Family(f) => to_value(&FamilyJson {
            members: f.members().iter().map(fuzzy_json).collect(),
            height_tag: f.height_tag().map(Num),
        }),
        Instance::Sequence { window, limit } => to_value(&SequenceJson {
            members: window.members().iter().map(fuzzy_json).collect(),
            tail_start: window.tail_start(),
            limit: limit.as_ref().map(fuzzy_json),
        }),
    };
    to_line(&RecordJson {
        space: space_json(&r.space),
        kind: r.instance.kind().into(),
        payload,
        metadata: r.metadata.clone(),
    })
}

/// All records, one per line, each terminated by a newline.
pub fn emit(records: &[InstanceRecord]) -> String {
    records.iter().map(|r| emit_record(r) + "\n").collect()
}

fn parse_line(text: &str) -> Result<InstanceRecord> {
    let rec: RecordJson = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let space = Arc::new(space_from(rec.space, rec.metadata.validated)?);
    let payload = |e: serde_json::Error| Error::Config(format!("bad {} payload: {e}", rec.kind));
    let instance = match rec.kind.as_str() {
        "set" => Instance::Set(set_from(&space, serde_json::from_value(rec.payload.clone()).map_err(payload)?)?),
        "fuzzy" => Instance::Fuzzy(fuzzy_from(&space, serde_json::from_value(rec.payload.clone()).map_err(payload)?)?),
        "family" => {
            let j: FamilyJson = serde_json::from_value(rec.payload.clone()).map_err(payload)?;
            let members = j.members.into_iter().map(|m| fuzzy_from(&space, m)).collect::<Result<Vec<_>>>()?;
            Instance::Family(match j.height_tag {
                Some(r) => FuzzyFamily::with_height(space.clone(), members, r.0)?,
                None => FuzzyFamily::new(space.clone(), members)?,
            })
        }
        "sequence" => {
            let j: SequenceJson = serde_json::from_value(rec.payload.clone()).map_err(payload)?;
            let members = j.members.into_iter().map(|m| fuzzy_from(&space, m)).collect::<Result<Vec<_>>>()?;
            Instance::Sequence {
                window: FuzzySeqWindow::new(members, j.tail_start)?,
                limit: j.limit.map(|l| fuzzy_from(&space, l)).transpose()?,
            }
        }
        other => return Err(Error::Config(format!("unknown record kind {other:?}"))),
    };
    Ok(InstanceRecord { space, instance, metadata: rec.metadata })
}

/// Parses every non-blank line; errors carry the 1-based line number.
pub fn parse(text: &str) -> Result<Vec<InstanceRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_line(l).map_err(|e| Error::Parse { line: i + 1, message: e.to_string() }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(space: GroundSpace, instance: Instance) -> InstanceRecord {
        InstanceRecord { space: Arc::new(space), instance, metadata: Metadata::new("test", Some(7)) }
    }

    #[test]
    fn floats_keep_every_bit() {
        let xs = [0.1, 1.0 / 3.0, -2.5e-300, 1e300, f64::MIN_POSITIVE, 0.0];
        let s = GroundSet::reals(xs);
        let r = record(GroundSpace::RealLine, Instance::Set(s.clone()));
        let line = emit_record(&r);
        assert!(line.contains("3.3333333333333331e-1"), "{line}");
        let back = parse(&line).unwrap();
        assert_eq!(back, vec![r]);
    }

    #[test]
    fn infinite_endpoints() {
        let space = Arc::new(GroundSpace::RealLine);
        let u = StepFuzzySet::chi(space.clone(), GroundSet::interval(f64::NEG_INFINITY, -1.0).unwrap()).unwrap();
        let r = InstanceRecord { space, instance: Instance::Fuzzy(u), metadata: Metadata::new("empu", None) };
        let text = emit(std::slice::from_ref(&r));
        assert!(text.contains("\"-inf\""));
        assert_eq!(parse(&text).unwrap(), vec![r]);
    }

    #[test]
    fn families_and_sequences() {
        let space = Arc::new(GroundSpace::euclidean(2).unwrap());
        let u = StepFuzzySet::point_hat(space.clone(), Point::coords([0.5, 0.25])).unwrap();
        let fam = FuzzyFamily::with_height(space.clone(), vec![u.clone(), u.clone()], 1.0).unwrap();
        let win = FuzzySeqWindow::new(vec![u.clone(); 3], 2).unwrap();
        let recs = vec![
            InstanceRecord { space: space.clone(), instance: Instance::Family(fam), metadata: Metadata::new("f", Some(1)) },
            InstanceRecord { space: space.clone(), instance: Instance::Sequence { window: win, limit: Some(u) }, metadata: Metadata::new("s", None) },
        ];
        let text = emit(&recs);
        assert_eq!(parse(&text).unwrap(), recs);
        assert_eq!(emit(&parse(&text).unwrap()), text);
    }

    #[test]
    fn point_clouds() {
        let cloud = PointCloud::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let r = record(GroundSpace::PointCloud(cloud), Instance::Set(GroundSet::points([Point::Id(1)])));
        assert_eq!(parse(&emit_record(&r)).unwrap(), vec![r]);
    }

    #[test]
    fn malformed_lines_report_their_number() {
        let good = emit_record(&record(GroundSpace::RealLine, Instance::Set(GroundSet::Empty)));
        let text = format!("{good}\n\n{{\"space\": 3}}\n");
        assert!(matches!(parse(&text), Err(Error::Parse { line: 3, .. })));
        let nested = good.replace("\"type\":\"empty\"", "\"type\":\"points\",\"points\":[[1.0,2.0]]");
        assert!(matches!(parse(&nested), Err(Error::Parse { line: 1, .. })));
        let bad_cuts = r#"{"space":{"type":"real_line"},"kind":"fuzzy","payload":{"levels":[0.5,1.0],"cuts":[{"type":"points","points":[[0.0]]},{"type":"points","points":[[1.0]]}]},"metadata":{"seed":null,"generator":"x","validated":true,"rng":"chacha8"}}"#;
        assert!(matches!(parse(bad_cuts), Err(Error::Parse { line: 1, .. })));
    }
}
