use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::enumeration::{
    enumerate_two_connected, Accumulator, Enumerated, EnumerationConfig, StreamSummary,
};
use crate::error::{Error, Result};
use crate::families::FamilyIndex;
use crate::graph::Graph;
use crate::invariants::wiener;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankingEntry {
    /// Dense rank over distinct Wiener values, starting at 1.
    pub rank: usize,
    pub graph6: String,
    pub wiener: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
}

/// Larger index first, then smaller canonical string.
fn order(a: (u64, &str), b: (u64, &str)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1))
}

/// The `k` best `(wiener, canonical)` pairs seen so far.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TopK {
    k: usize,
    entries: Vec<(u64, String)>,
}

impl TopK {
    pub fn new(k: usize) -> Self {
        TopK {
            k,
            entries: Vec::with_capacity(k + 1),
        }
    }

    pub fn offer(&mut self, wiener: u64, canonical: &str) {
        if self.k == 0 {
            return;
        }
        if self.entries.len() == self.k {
            let (w, c) = self.entries.last().expect("k > 0");
            if order((wiener, canonical), (*w, c)) != Ordering::Less {
                return;
            }
        }
        let at = self
            .entries
            .partition_point(|(w, c)| order((*w, c), (wiener, canonical)) == Ordering::Less);
        if self
            .entries
            .get(at)
            .is_some_and(|(w, c)| *w == wiener && c == canonical)
        {
            return;
        }
        self.entries.insert(at, (wiener, canonical.to_string()));
        self.entries.truncate(self.k);
    }

    pub fn entries(&self) -> &[(u64, String)] {
        &self.entries
    }

    pub fn into_ranking(self, index: Option<&FamilyIndex>) -> Vec<RankingEntry> {
        let mut rank = 0;
        let mut prev = None;
        self.entries
            .into_iter()
            .map(|(w, c)| {
                if prev != Some(w) {
                    rank += 1;
                    prev = Some(w);
                }
                let family = index.and_then(|ix| ix.name(&c));
                RankingEntry {
                    rank,
                    graph6: c,
                    wiener: w,
                    family,
                }
            })
            .collect()
    }
}

impl Accumulator for TopK {
    fn accept(&mut self, item: &Enumerated) {
        let w = wiener(&item.graph).expect("enumerated graphs are connected");
        self.offer(w, &item.canonical);
    }

    fn merge(&mut self, other: Self) {
        for (w, c) in other.entries {
            self.offer(w, &c);
        }
    }
}

/// Graphs attaining one Wiener value. `members` holds at most the cap's
/// worth of smallest canonical strings; `count` is exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tier {
    pub wiener: u64,
    pub count: u64,
    pub members: Vec<String>,
}

impl Tier {
    pub fn is_complete(&self) -> bool {
        self.count == self.members.len() as u64
    }
}

/// The highest `max_tiers` distinct Wiener values with their members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopTiers {
    max_tiers: usize,
    cap: usize,
    tiers: BTreeMap<u64, Tier>,
}

impl TopTiers {
    pub fn new(max_tiers: usize, cap: usize) -> Self {
        TopTiers {
            max_tiers,
            cap,
            tiers: BTreeMap::new(),
        }
    }

    pub fn offer(&mut self, wiener: u64, canonical: &str) {
        if self.max_tiers == 0 {
            return;
        }
        if self.tiers.len() == self.max_tiers
            && !self.tiers.contains_key(&wiener)
            && self.tiers.keys().next().is_some_and(|&low| wiener < low)
        {
            return;
        }
        let tier = self.tiers.entry(wiener).or_insert_with(|| Tier {
            wiener,
            count: 0,
            members: Vec::new(),
        });
        tier.count += 1;
        insert_capped(&mut tier.members, canonical, self.cap);
        while self.tiers.len() > self.max_tiers {
            self.tiers.pop_first();
        }
    }

    fn absorb(&mut self, tier: Tier) {
        if self.tiers.len() == self.max_tiers
            && !self.tiers.contains_key(&tier.wiener)
            && self
                .tiers
                .keys()
                .next()
                .is_some_and(|&low| tier.wiener < low)
        {
            return;
        }
        let mine = self.tiers.entry(tier.wiener).or_insert_with(|| Tier {
            wiener: tier.wiener,
            count: 0,
            members: Vec::new(),
        });
        mine.count += tier.count;
        for m in &tier.members {
            insert_capped(&mut mine.members, m, self.cap);
        }
        while self.tiers.len() > self.max_tiers {
            self.tiers.pop_first();
        }
    }

    pub fn merge(&mut self, other: TopTiers) {
        for (_, tier) in other.tiers {
            self.absorb(tier);
        }
    }

    /// Tiers from the largest Wiener value down.
    pub fn tiers(&self) -> Vec<&Tier> {
        self.tiers.values().rev().collect()
    }
}

fn insert_capped(members: &mut Vec<String>, canonical: &str, cap: usize) {
    match members.binary_search_by(|m| m.as_str().cmp(canonical)) {
        Ok(_) => {}
        Err(at) if at < cap => {
            members.insert(at, canonical.to_string());
            members.truncate(cap);
        }
        Err(_) => {}
    }
}

/// Top `top_k` graphs of a stream of equal-order graphs by Wiener index.
pub fn rank_by_wiener<I>(graphs: I, top_k: usize) -> Result<Vec<RankingEntry>>
where
    I: IntoIterator<Item = Graph>,
{
    let mut top = TopK::new(top_k);
    let mut order = None;
    for g in graphs {
        match order {
            None => order = Some(g.order()),
            Some(n) if n != g.order() => {
                return Err(Error::InvalidParameters(format!(
                    "ranking needs graphs of one order, got {n} and {}",
                    g.order()
                )))
            }
            Some(_) => {}
        }
        let w = wiener(&g)?;
        top.offer(w, &canonical_form(&g).string);
    }
    let n = order.ok_or(Error::EmptyStream)?;
    let index = FamilyIndex::new(n).ok();
    Ok(top.into_ranking(index.as_ref()))
}

/// Top `top_k` 2-connected graphs of order `cfg.n` by Wiener index.
pub fn rank_enumerated(
    cfg: &EnumerationConfig,
    top_k: usize,
) -> Result<(Vec<RankingEntry>, StreamSummary)> {
    let (top, summary) = enumerate_two_connected(cfg, || TopK::new(top_k))?;
    if summary.count == 0 {
        return Err(Error::EmptyStream);
    }
    let index = FamilyIndex::new(cfg.n).ok();
    Ok((top.into_ranking(index.as_ref()), summary))
}
