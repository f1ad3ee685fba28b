//! Text formats for domains, points and maps.
//!
//! Domains are written `kind` or `kind:key=value;key=value`, e.g.
//! `ball:c=0,0;r=1`, `halfspace:n=2`, `koch:depth=6`, `polygon:@verts.csv`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use hypmetric_core::conformal::{AnalyticTag, MapSpec};
use hypmetric_core::{Domain, Point, Vec2};

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("malformed spec `{0}`: {1}")]
    Malformed(String, String),
    #[error("unknown kind `{0}`")]
    UnknownKind(String),
    #[error("missing key `{key}` in `{spec}`")]
    MissingKey { spec: String, key: &'static str },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] hypmetric_core::Error),
}

type Fields<'a> = BTreeMap<&'a str, &'a str>;

fn split_spec(spec: &str) -> Result<(&str, Fields<'_>), SpecError> {
    let spec = spec.trim();
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let mut fields = Fields::new();
    for part in rest.split(';').filter(|p| !p.is_empty()) {
        // `polygon:@file` carries a bare value
        let (k, v) = part.split_once('=').unwrap_or(("", part));
        if fields.insert(k.trim(), v.trim()).is_some() {
            return Err(SpecError::Malformed(spec.into(), format!("key `{k}` repeated")));
        }
    }
    Ok((kind.trim(), fields))
}

fn number<T: std::str::FromStr>(spec: &str, key: &str, text: &str) -> Result<T, SpecError> {
    text.parse()
        .map_err(|_| SpecError::Malformed(spec.into(), format!("`{key}` is not a number: `{text}`")))
}

fn required<'a>(spec: &str, fields: &Fields<'a>, key: &'static str) -> Result<&'a str, SpecError> {
    fields.get(key).copied().ok_or(SpecError::MissingKey { spec: spec.into(), key })
}

fn reject_unknown(spec: &str, fields: &Fields<'_>, allowed: &[&str]) -> Result<(), SpecError> {
    match fields.keys().find(|k| !allowed.contains(k)) {
        Some(k) => Err(SpecError::Malformed(spec.into(), format!("unexpected key `{k}`"))),
        None => Ok(()),
    }
}

/// Comma-separated coordinates, `n ≥ 2`.
pub fn parse_point(text: &str) -> Result<Point, SpecError> {
    let coords = text
        .split(',')
        .map(|c| number::<f64>(text, "coordinate", c.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Point::new(coords)?)
}

/// Polygon vertices, one `x,y` per line; blank lines and `#` comments skipped.
pub fn read_polygon_csv(path: &Path) -> Result<Vec<Vec2>, SpecError> {
    let text = fs::read_to_string(path).map_err(|source| SpecError::Io {
        path: path.display().to_string(),
        source,
    })?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let p = parse_point(l)?;
            match p.coords() {
                [x, y] => Ok(Vec2::new(*x, *y)),
                _ => Err(SpecError::Malformed(l.into(), "polygon vertices are planar".into())),
            }
        })
        .collect()
}

pub fn parse_domain(spec: &str) -> Result<Domain, SpecError> {
    let (kind, f) = split_spec(spec)?;
    let centred = |f: &Fields| -> Result<(Point, f64), SpecError> {
        reject_unknown(spec, f, &["c", "r"])?;
        let c = parse_point(required(spec, f, "c")?)?;
        let r = f.get("r").map_or(Ok(1.0), |r| number(spec, "r", r))?;
        Ok((c, r))
    };
    let domain = match kind {
        "halfspace" => {
            reject_unknown(spec, &f, &["n"])?;
            Domain::half_space(f.get("n").map_or(Ok(2), |n| number(spec, "n", n))?)?
        }
        "ball" => {
            let (c, r) = centred(&f)?;
            Domain::ball(c, r)?
        }
        "ballcomp" => {
            let (c, r) = centred(&f)?;
            Domain::ball_complement(c, r)?
        }
        "puncturedball" => {
            let (c, r) = centred(&f)?;
            Domain::punctured_ball(c, r)?
        }
        "punctured" => {
            reject_unknown(spec, &f, &["p"])?;
            Domain::punctured(parse_point(required(spec, &f, "p")?)?)
        }
        "koch" => {
            reject_unknown(spec, &f, &["depth"])?;
            Domain::koch(number(spec, "depth", required(spec, &f, "depth")?)?)?
        }
        "polygon" => {
            reject_unknown(spec, &f, &[""])?;
            let file = required(spec, &f, "")
                .ok()
                .and_then(|v| v.strip_prefix('@'))
                .ok_or_else(|| SpecError::Malformed(spec.into(), "expected polygon:@<file.csv>".into()))?;
            Domain::polygon(read_polygon_csv(Path::new(file))?)?
        }
        "strip" | "square" | "slitdisk" => {
            reject_unknown(spec, &f, &[])?;
            match kind {
                "strip" => Domain::Strip,
                "square" => Domain::unit_square(),
                _ => Domain::SlitDisk,
            }
        }
        other => return Err(SpecError::UnknownKind(other.into())),
    };
    Ok(domain)
}

/// Maps: `identity:n=2`, `sigma:a=0.5,0[;theta=0.3]`, `cayley:n=2`,
/// `cayley-inv:n=2`, `radial:K=2[;n=2]`, `square`.
pub fn parse_map(spec: &str) -> Result<MapSpec, SpecError> {
    let (kind, f) = split_spec(spec)?;
    let dim = |f: &Fields| f.get("n").map_or(Ok(2), |n| number::<usize>(spec, "n", n));
    let map = match kind {
        "identity" => {
            reject_unknown(spec, &f, &["n"])?;
            MapSpec::identity(dim(&f)?)
        }
        "sigma" => {
            reject_unknown(spec, &f, &["a", "theta"])?;
            let a = parse_point(required(spec, &f, "a")?)?;
            match f.get("theta") {
                None => MapSpec::sigma(a)?,
                Some(t) if a.dim() == 2 => MapSpec::ball_automorphism(a, MapSpec::rotation2(number(spec, "theta", t)?))?,
                Some(_) => return Err(SpecError::Malformed(spec.into(), "theta needs a planar centre".into())),
            }
        }
        "cayley" | "cayley-inv" => {
            reject_unknown(spec, &f, &["n"])?;
            let dim = dim(&f)?;
            if dim < 2 {
                return Err(SpecError::Malformed(spec.into(), "n must be >= 2".into()));
            }
            if kind == "cayley" {
                MapSpec::CayleyBallToHalfspace { dim }
            } else {
                MapSpec::CayleyHalfspaceToBall { dim }
            }
        }
        "radial" => {
            reject_unknown(spec, &f, &["K", "n"])?;
            MapSpec::radial_stretch(number(spec, "K", required(spec, &f, "K")?)?, dim(&f)?)?
        }
        "square" => {
            reject_unknown(spec, &f, &[])?;
            MapSpec::PlanarAnalytic(AnalyticTag::Square)
        }
        other => return Err(SpecError::UnknownKind(other.into())),
    };
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn domains_round_trip_through_display() {
        for spec in ["halfspace:n=2", "halfspace:n=3", "ball:c=0,0;r=1", "punctured:p=0,0", "strip", "koch:depth=3", "slitdisk"] {
            let g = parse_domain(spec).unwrap();
            assert_eq!(parse_domain(&g.to_string()).unwrap(), g, "{spec}");
        }
        assert_eq!(parse_domain("ball:c=1,2,3").unwrap(), Domain::ball(Point::new(vec![1.0, 2.0, 3.0]).unwrap(), 1.0).unwrap());
        assert_eq!(parse_domain("square").unwrap(), Domain::unit_square());
    }

    #[test]
    fn bad_domains() {
        assert!(matches!(parse_domain("torus"), Err(SpecError::UnknownKind(_))));
        assert!(matches!(parse_domain("ball:r=2"), Err(SpecError::MissingKey { key: "c", .. })));
        assert!(parse_domain("ball:c=0,0;r=-1").is_err());
        assert!(parse_domain("halfspace:n=two").is_err());
        assert!(parse_domain("strip:w=2").is_err());
        assert!(parse_domain("koch:depth=9").is_err());
        assert!(parse_domain("polygon:@/no/such/file.csv").is_err());
    }

    #[test]
    fn polygon_from_file() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "# unit square\n0,0\n1,0\n\n1,1\n0,1").unwrap();
        let g = parse_domain(&format!("polygon:@{}", file.path().display())).unwrap();
        assert_eq!(g, Domain::unit_square());
    }

    #[test]
    fn maps() {
        assert_eq!(parse_map("radial:K=2").unwrap(), MapSpec::radial_stretch(2.0, 2).unwrap());
        assert_eq!(parse_map("cayley:n=3").unwrap(), MapSpec::CayleyBallToHalfspace { dim: 3 });
        assert!(parse_map("sigma:a=0.5,0;theta=1").unwrap().is_mobius());
        assert!(parse_map("sigma:a=2,0").is_err());
        assert!(parse_map("radial").is_err());
    }
}
