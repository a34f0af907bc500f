//! Hardness gadgets: 3-Partition to binary flip distance, and the fragment
//! encoding of arbitrary strings as binary ones.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::string::{compatible, Flip, FlipSequence, RawString, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreePartitionInstance {
    k: usize,
    n: usize,
    sizes: Vec<usize>,
}

impl ThreePartitionInstance {
    /// Checks `N/4 < r < N/2` for every size and `Σ r = kN`.
    pub fn new(n: usize, sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || !sizes.len().is_multiple_of(3) {
            return Err(Error::InvalidInstance(format!(
                "{} sizes is not a positive multiple of 3",
                sizes.len()
            )));
        }
        let k = sizes.len() / 3;
        if let Some(&r) = sizes.iter().find(|&&r| 4 * r <= n || 2 * r >= n) {
            return Err(Error::InvalidInstance(format!("size {r} outside ({n}/4, {n}/2)")));
        }
        let total: usize = sizes.iter().sum();
        if total != k * n {
            return Err(Error::InvalidInstance(format!(
                "sizes sum to {total}, expected {}",
                k * n
            )));
        }
        Ok(ThreePartitionInstance { k, n, sizes })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The target triple sum `N`.
    pub fn target(&self) -> usize {
        self.n
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Flip budget `B = 6k` of the gadget.
    pub fn bound(&self) -> usize {
        6 * self.k
    }
}

/// Parses `"k N"` on the first line and the `3k` sizes on the second.
impl FromStr for ThreePartitionInstance {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidInstance(msg.to_string());
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header: Vec<usize> = lines
            .next()
            .ok_or_else(|| bad("missing header line"))?
            .split_whitespace()
            .map(|w| w.parse().map_err(|_| bad("header must be two integers")))
            .collect::<Result<_>>()?;
        let [k, n] = header[..] else {
            return Err(bad("header must be \"k N\""));
        };
        let sizes: Vec<usize> = lines
            .next()
            .ok_or_else(|| bad("missing sizes line"))?
            .split_whitespace()
            .map(|w| w.parse().map_err(|_| bad("sizes must be integers")))
            .collect::<Result<_>>()?;
        if lines.next().is_some() {
            return Err(bad("trailing lines"));
        }
        if sizes.len() != 3 * k {
            return Err(Error::InvalidInstance(format!(
                "expected {} sizes, got {}",
                3 * k,
                sizes.len()
            )));
        }
        ThreePartitionInstance::new(n, sizes)
    }
}

impl fmt::Display for ThreePartitionInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.k, self.n)?;
        let sizes: Vec<String> = self.sizes.iter().map(ToString::to_string).collect();
        writeln!(f, "{}", sizes.join(" "))
    }
}

/// Triples of 1-based element indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TripletPartition(Vec<[usize; 3]>);

impl TripletPartition {
    pub fn new(triples: Vec<[usize; 3]>) -> Self {
        TripletPartition(triples)
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.0
    }

    pub fn validate(&self, inst: &ThreePartitionInstance) -> Result<()> {
        let m = inst.sizes.len();
        if self.0.len() != inst.k {
            return Err(Error::InvalidPartition(format!(
                "{} triples for k={}",
                self.0.len(),
                inst.k
            )));
        }
        let mut used = vec![false; m];
        for t in &self.0 {
            for &i in t {
                if i == 0 || i > m || std::mem::replace(&mut used[i - 1], true) {
                    return Err(Error::InvalidPartition(format!("index {i} invalid or repeated")));
                }
            }
            let sum: usize = t.iter().map(|&i| inst.sizes[i - 1]).sum();
            if sum != inst.n {
                return Err(Error::InvalidPartition(format!(
                    "triple {t:?} sums to {sum}, not {}",
                    inst.n
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for TripletPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, t) in self.0.iter().enumerate() {
            if j > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{{{},{},{}}}", t[0], t[1], t[2])?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetPair {
    pub s: RawString,
    pub t: RawString,
    pub bound: usize,
}

pub fn encode_3p(inst: &ThreePartitionInstance) -> GadgetPair {
    let mut s = Vec::new();
    for &r in &inst.sizes {
        s.extend([0, 0, 0]);
        s.extend(std::iter::repeat_n(1, r));
    }
    s.extend([0, 0, 0]);
    let mut t = vec![0; 3 * (3 * inst.k + 1) - inst.k];
    for _ in 0..inst.k {
        t.push(0);
        t.extend(std::iter::repeat_n(1, inst.n));
    }
    GadgetPair {
        s: RawString::new(s),
        t: RawString::new(t),
        bound: inst.bound(),
    }
}

/// Six flips per triple. Each element is brought to the front by flipping
/// up to the end of its 1-block, then flipped to the back of the unfinished
/// prefix, landing just in front of the previous element of its triple.
pub fn certificate_3p(inst: &ThreePartitionInstance, p: &TripletPartition) -> Result<FlipSequence> {
    p.validate(inst)?;
    let gadget = encode_3p(inst);
    let mut symbols = gadget.s.into_symbols();
    // owning element of every 1, 0 for zeros
    let mut owner = Vec::with_capacity(symbols.len());
    for (e, &r) in inst.sizes.iter().enumerate() {
        owner.extend([0, 0, 0]);
        owner.extend(std::iter::repeat_n(e + 1, r));
    }
    owner.extend([0, 0, 0]);

    let mut seq = FlipSequence::new();
    let mut apply = |prefix: usize, symbols: &mut Vec<Symbol>, owner: &mut Vec<usize>| -> Result<()> {
        symbols[..prefix].reverse();
        owner[..prefix].reverse();
        seq.push(Flip::new(prefix)?);
        Ok(())
    };
    let mut working = symbols.len();
    for triple in p.triples() {
        let mut back = working;
        for &e in triple {
            let end = owner.iter().rposition(|&o| o == e).expect("element present") + 1;
            apply(end, &mut symbols, &mut owner)?;
            apply(back, &mut symbols, &mut owner)?;
            back -= inst.sizes[e - 1];
        }
        working -= inst.n + 1;
    }
    if symbols != gadget.t.symbols() {
        return Err(Error::InvalidPartition("certificate replay does not reach t".into()));
    }
    Ok(seq)
}

/// Lexicographically least partition by backtracking, always completing the
/// triple of the smallest unused index. Gives up after `max_nodes` search nodes.
pub fn solve_3p(inst: &ThreePartitionInstance, max_nodes: u64) -> Result<Option<TripletPartition>> {
    fn go(
        sizes: &[usize],
        n: usize,
        used: &mut [bool],
        out: &mut Vec<[usize; 3]>,
        nodes: &mut u64,
        max_nodes: u64,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > max_nodes {
            return Err(Error::BudgetExceeded(format!(
                "3-Partition search exceeded {max_nodes} nodes"
            )));
        }
        let Some(i) = used.iter().position(|&u| !u) else {
            return Ok(true);
        };
        used[i] = true;
        for j in i + 1..sizes.len() {
            if used[j] || sizes[i] + sizes[j] >= n {
                continue;
            }
            used[j] = true;
            for l in j + 1..sizes.len() {
                if used[l] || sizes[i] + sizes[j] + sizes[l] != n {
                    continue;
                }
                used[l] = true;
                out.push([i + 1, j + 1, l + 1]);
                if go(sizes, n, used, out, nodes, max_nodes)? {
                    return Ok(true);
                }
                out.pop();
                used[l] = false;
            }
            used[j] = false;
        }
        used[i] = false;
        Ok(false)
    }
    let mut used = vec![false; inst.sizes.len()];
    let mut out = Vec::new();
    let mut nodes = 0;
    let found = go(&inst.sizes, inst.n, &mut used, &mut out, &mut nodes, max_nodes)?;
    Ok(found.then_some(TripletPartition(out)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FragmentEncoding {
    pub source: (RawString, RawString),
    pub x: RawString,
    pub y: RawString,
    /// End offset of each fragment of `x`.
    pub boundaries: Vec<usize>,
    pub subfragments: usize,
}

fn fragment(v: Symbol, copies: usize) -> Vec<Symbol> {
    let mut sub = vec![1];
    sub.extend(std::iter::repeat_n(0, usize::from(v) + 1));
    sub.push(1);
    sub.repeat(copies)
}

fn fragment_len(v: Symbol, copies: usize) -> usize {
    copies * (usize::from(v) + 3)
}

pub fn encode_rsw(x: &RawString, y: &RawString) -> Result<FragmentEncoding> {
    if !compatible(x, y) {
        return Err(Error::Incompatible);
    }
    let copies = 2 * x.len() + 1;
    let encode = |s: &RawString| RawString::new(s.symbols().iter().flat_map(|&v| fragment(v, copies)).collect());
    let boundaries = x
        .symbols()
        .iter()
        .scan(0, |end, &v| {
            *end += fragment_len(v, copies);
            Some(*end)
        })
        .collect();
    Ok(FragmentEncoding {
        source: (x.clone(), y.clone()),
        x: encode(x),
        y: encode(y),
        boundaries,
        subfragments: copies,
    })
}

/// Each flip of `i` symbols becomes a flip covering exactly their fragments.
pub fn lift_flips_rsw(enc: &FragmentEncoding, seq: &FlipSequence) -> Result<FlipSequence> {
    let mut cur = enc.source.0.symbols().to_vec();
    let mut out = FlipSequence::new();
    for flip in seq.flips() {
        let i = flip.prefix();
        if i > cur.len() {
            return Err(Error::PrefixTooLong {
                prefix: i,
                len: cur.len(),
            });
        }
        out.push(Flip::new(
            cur[..i].iter().map(|&v| fragment_len(v, enc.subfragments)).sum(),
        )?);
        cur[..i].reverse();
    }
    Ok(out)
}
