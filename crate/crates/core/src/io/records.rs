use std::io::Read;
use std::path::Path;

use super::{csv_reader, field, line_of, number, open, Columns};
use crate::error::{Error, Result};
use crate::formula::TravelTimeTable;
use crate::scenarios::{DailyLog, ScaleReading, Sighting, Who};

/// `scale_id,time,weight`.
pub fn read_scales<R: Read>(input: R) -> Result<Vec<ScaleReading>> {
    let mut rdr = csv_reader(input);
    let cols = Columns::read(&mut rdr)?;
    cols.only(|n| matches!(n, "scale_id" | "time" | "weight"))?;
    let (s, t, w) = (cols.require("scale_id")?, cols.require("time")?, cols.require("weight")?);
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = line_of(&rec);
        let scale_id = match field(&rec, s, "scale_id")? {
            "1" => 1,
            "2" => 2,
            other => return Err(Error::parse(line, "scale_id", format!("{other:?} is not 1 or 2"))),
        };
        let weight = number(&rec, w, "weight")?;
        if weight <= 0.0 {
            return Err(Error::parse(line, "weight", format!("{weight} must be positive")));
        }
        out.push(ScaleReading {
            scale_id,
            time: number(&rec, t, "time")?,
            weight,
        });
    }
    Ok(out)
}

/// `day,calories,weight`.
pub fn read_logs<R: Read>(input: R) -> Result<Vec<DailyLog>> {
    let mut rdr = csv_reader(input);
    let cols = Columns::read(&mut rdr)?;
    cols.only(|n| matches!(n, "day" | "calories" | "weight"))?;
    let (d, c, w) = (cols.require("day")?, cols.require("calories")?, cols.require("weight")?);
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = line_of(&rec);
        let raw = field(&rec, d, "day")?;
        let day = raw
            .parse()
            .map_err(|_| Error::parse(line, "day", format!("{raw:?} is not an integer")))?;
        let calories = number(&rec, c, "calories")?;
        if calories < 0.0 {
            return Err(Error::parse(line, "calories", format!("{calories} must be >= 0")));
        }
        out.push(DailyLog {
            day,
            calories,
            weight: number(&rec, w, "weight")?,
        });
    }
    Ok(out)
}

/// `who,time,location`. `who` is `theory`, `theory:<name>` or a witness id;
/// `location` is a location name from `travel` or its 0-based index.
pub fn read_sightings<R: Read>(input: R, travel: &TravelTimeTable) -> Result<Vec<Sighting>> {
    let mut rdr = csv_reader(input);
    let cols = Columns::read(&mut rdr)?;
    cols.only(|n| matches!(n, "who" | "time" | "location"))?;
    let (wi, ti, li) = (cols.require("who")?, cols.require("time")?, cols.require("location")?);
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = line_of(&rec);
        let who = match field(&rec, wi, "who")? {
            "" => return Err(Error::parse(line, "who", "empty source")),
            "theory" => Who::Theory("default".to_string()),
            w => match w.strip_prefix("theory:") {
                Some("") => return Err(Error::parse(line, "who", "empty theory name")),
                Some(name) => Who::Theory(name.to_string()),
                None => Who::Witness(w.to_string()),
            },
        };
        let raw = field(&rec, li, "location")?;
        let location = match travel.index_of(raw) {
            Some(i) => i,
            None => match raw.parse::<usize>() {
                Ok(i) if i < travel.len() => i,
                _ => {
                    return Err(Error::parse(
                        line,
                        "location",
                        format!("{raw:?} is neither a location name nor an index below {}", travel.len()),
                    ))
                }
            },
        };
        out.push(Sighting {
            who,
            time: number(&rec, ti, "time")?,
            location,
        });
    }
    Ok(out)
}

/// Header row of location names followed by one row of minutes per location.
pub fn read_travel<R: Read>(input: R) -> Result<TravelTimeTable> {
    let mut rdr = csv_reader(input);
    let cols = Columns::read(&mut rdr)?;
    let names = cols.names().to_vec();
    let mut minutes = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = line_of(&rec);
        let from = names.get(minutes.len()).ok_or_else(|| {
            Error::parse(line, "row", format!("more rows than the {} named locations", names.len()))
        })?;
        let row = names
            .iter()
            .enumerate()
            .map(|(j, to)| number(&rec, j, to))
            .collect::<Result<Vec<_>>>()?;
        if let Some((j, v)) = row.iter().enumerate().find(|(_, v)| **v < 0.0) {
            return Err(Error::parse(line, names[j].clone(), format!("travel time {v} from {from} is negative")));
        }
        minutes.push(row);
    }
    if minutes.len() != names.len() {
        return Err(Error::parse(
            minutes.len() as u64 + 1,
            "row",
            format!("expected {} rows, found {}", names.len(), minutes.len()),
        ));
    }
    TravelTimeTable::new(names, minutes)
}

pub fn parse_scales(text: &str) -> Result<Vec<ScaleReading>> {
    read_scales(text.as_bytes())
}

pub fn parse_logs(text: &str) -> Result<Vec<DailyLog>> {
    read_logs(text.as_bytes())
}

pub fn parse_sightings(text: &str, travel: &TravelTimeTable) -> Result<Vec<Sighting>> {
    read_sightings(text.as_bytes(), travel)
}

pub fn parse_travel(text: &str) -> Result<TravelTimeTable> {
    read_travel(text.as_bytes())
}

pub fn load_scales(path: &Path) -> Result<Vec<ScaleReading>> {
    read_scales(open(path)?)
}

pub fn load_logs(path: &Path) -> Result<Vec<DailyLog>> {
    read_logs(open(path)?)
}

pub fn load_sightings(path: &Path, travel: &TravelTimeTable) -> Result<Vec<Sighting>> {
    read_sightings(open(path)?, travel)
}

pub fn load_travel(path: &Path) -> Result<TravelTimeTable> {
    read_travel(open(path)?)
}
