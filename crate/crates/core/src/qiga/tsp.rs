use std::cmp::Ordering;

use serde::Serialize;

use crate::{Error, RandomSource, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct City {
    pub id: String,
    pub x: f64,
    pub y: f64,
}

/// Cities sorted by id (numerically when every id is an integer) with a
/// precomputed Euclidean distance matrix. Tours refer to cities by their
/// position in this order.
#[derive(Debug, Clone, PartialEq)]
pub struct TspInstance {
    cities: Vec<City>,
    dist: Vec<f64>,
}

fn id_order(cities: &mut [City]) {
    let numeric: Option<Vec<i64>> = cities.iter().map(|c| c.id.parse().ok()).collect();
    match numeric {
        Some(_) => cities.sort_by_key(|c| c.id.parse::<i64>().expect("checked numeric")),
        None => cities.sort_by(|a, b| a.id.cmp(&b.id)),
    }
}

impl TspInstance {
    pub fn new(mut cities: Vec<City>) -> Result<Self> {
        if cities.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "need at least 3 cities, got {}",
                cities.len()
            )));
        }
        if let Some(c) = cities.iter().find(|c| !c.x.is_finite() || !c.y.is_finite()) {
            return Err(Error::InvalidInput(format!("city {} has non-finite coordinates", c.id)));
        }
        id_order(&mut cities);
        if let Some(w) = cities.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::InvalidInput(format!("duplicate city id {}", w[0].id)));
        }
        let n = cities.len();
        let dist = (0..n * n)
            .map(|k| {
                let (a, b) = (&cities[k / n], &cities[k % n]);
                (a.x - b.x).hypot(a.y - b.y)
            })
            .collect();
        Ok(Self { cities, dist })
    }

    /// Lines `id x y`; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cities = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let fields: Vec<(usize, &str)> = line
                .split_whitespace()
                .map(|f| (f.as_ptr() as usize - line.as_ptr() as usize + 1, f))
                .collect();
            if fields.is_empty() {
                continue;
            }
            if fields.len() != 3 {
                return Err(Error::parse(i + 1, 1, "expected `id x y`"));
            }
            let coord = |k: usize| -> Result<f64> {
                let (column, text) = fields[k];
                text.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::parse(i + 1, column, "invalid coordinate"))
            };
            cities.push(City {
                id: fields[0].1.to_string(),
                x: coord(1)?,
                y: coord(2)?,
            });
        }
        Self::new(cities)
    }

    /// `n` cities evenly spaced on a circle, ids `1..=n` in angular order.
    pub fn circle(n: usize, radius: f64) -> Result<Self> {
        let cities = (0..n)
            .map(|k| {
                let angle = std::f64::consts::TAU * k as f64 / n as f64;
                City {
                    id: (k + 1).to_string(),
                    x: radius * angle.cos(),
                    y: radius * angle.sin(),
                }
            })
            .collect();
        Self::new(cities)
    }

    pub fn len(&self) -> usize {
        self.cities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cities.is_empty()
    }

    pub fn cities(&self) -> &[City] {
        &self.cities
    }

    pub fn distance(&self, a: usize, b: usize) -> f64 {
        self.dist[a * self.cities.len() + b]
    }

    pub fn random_tour(&self, rng: &mut RandomSource) -> Tour {
        let mut order: Vec<usize> = (0..self.len()).collect();
        rng.shuffle(&mut order);
        Tour(order)
    }
}

/// Closed tour over city positions; the edge back to the first city is
/// implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Tour(Vec<usize>);

impl Tour {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let tour = Tour(order);
        if !tour.is_valid(tour.len()) {
            return Err(Error::InvalidInput(format!("{:?} is not a permutation", tour.0)));
        }
        Ok(tour)
    }

    /// Tour written with city ids.
    pub fn from_ids<S: AsRef<str>>(ids: &[S], instance: &TspInstance) -> Result<Self> {
        let order = ids
            .iter()
            .map(|id| {
                instance
                    .cities
                    .iter()
                    .position(|c| c.id == id.as_ref())
                    .ok_or_else(|| Error::InvalidInput(format!("unknown city {}", id.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        if order.len() != instance.len() {
            return Err(Error::Dimension {
                expected: instance.len(),
                found: order.len(),
            });
        }
        Self::new(order)
    }

    pub(crate) fn from_vec_unchecked(order: Vec<usize>) -> Self {
        Tour(order)
    }

    pub fn order(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_valid(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        self.0.len() == n && self.0.iter().all(|&c| c < n && !std::mem::replace(&mut seen[c], true))
    }

    pub fn ids<'a>(&self, instance: &'a TspInstance) -> Vec<&'a str> {
        self.0.iter().map(|&c| instance.cities[c].id.as_str()).collect()
    }

    /// Number of positions at which two tours differ.
    pub fn hamming(&self, other: &Tour) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }
}

pub fn tour_length(tour: &Tour, instance: &TspInstance) -> f64 {
    let order = tour.order();
    (0..order.len())
        .map(|k| instance.distance(order[k], order[(k + 1) % order.len()]))
        .sum()
}

pub(crate) fn by_length(a: f64, b: f64) -> Ordering {
    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
}
