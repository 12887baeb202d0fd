//! Multipass streaming over [`GraphStream`]s with exact state accounting.
//!
//! Memory is the size of an algorithm's serialized state at pass
//! boundaries; working memory inside a pass is not charged. The harness
//! saves the state after every pass, reloads it into the algorithm and
//! checks that it re-serializes to the same bits, so nothing can be carried
//! across passes outside the state.

mod algorithms;
mod oracles;

pub use algorithms::{algorithm_by_name, BidirectionalBfs, DirectedFrontier, ForwardBfs, UnionFind, ALGORITHMS};
pub use oracles::{maximum_matching_size, oracle_distance, oracle_perfect_matching, oracle_reachable};

use bitvec::prelude::*;

use crate::gadgets::GraphStream;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Continue,
    Answer(bool),
}

/// Public facts about the stream, known to the algorithm for free.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StreamMeta {
    pub directed: bool,
    pub num_vertices: usize,
    pub num_edges: usize,
    pub source: usize,
    pub target: usize,
}

impl StreamMeta {
    pub fn of(g: &GraphStream) -> Self {
        Self {
            directed: g.directed(),
            num_vertices: g.num_vertices(),
            num_edges: g.num_edges(),
            source: g.source(),
            target: g.target(),
        }
    }
}

/// A multipass algorithm. Passes are numbered from 1.
pub trait StreamingAlgorithm {
    fn name(&self) -> &'static str;
    /// May answer before reading anything (0 passes).
    fn init(&mut self, meta: &StreamMeta) -> Step;
    fn begin_pass(&mut self, pass: usize);
    fn observe_edge(&mut self, u: usize, v: usize);
    fn end_pass(&mut self, pass: usize) -> Step;
    fn save_state(&self, out: &mut StateWriter);
    /// Replaces the whole state with what `input` holds.
    fn load_state(&mut self, meta: &StreamMeta, input: &mut StateReader<'_>) -> Result<()>;
}

/// Bits needed to write any value in `0..=max`.
pub fn width_for(max: usize) -> usize {
    (usize::BITS - max.leading_zeros()) as usize
}

#[derive(Clone, Debug, Default)]
pub struct StateWriter {
    bits: BitVec<u64, Lsb0>,
}

impl StateWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &BitSlice<u64, Lsb0> {
        &self.bits
    }

    pub fn bit(&mut self, b: bool) {
        self.bits.push(b);
    }

    pub fn uint(&mut self, value: usize, width: usize) {
        assert!(width <= 64 && (width == 64 || (value as u64) >> width == 0), "{value} needs more than {width} bits");
        if width > 0 {
            let start = self.bits.len();
            self.bits.resize(start + width, false);
            self.bits[start..].store_le(value as u64);
        }
    }

    pub fn bitmap(&mut self, flags: &[bool]) {
        self.bits.extend(flags.iter().copied());
    }
}

pub struct StateReader<'a> {
    bits: &'a BitSlice<u64, Lsb0>,
    pos: usize,
}

impl<'a> StateReader<'a> {
    pub fn new(bits: &'a BitSlice<u64, Lsb0>) -> Self {
        Self { bits, pos: 0 }
    }

    fn take(&mut self, width: usize) -> Result<&'a BitSlice<u64, Lsb0>> {
        let end = self.pos + width;
        if end > self.bits.len() {
            return Err(Error::State(format!("read past end of {} bits", self.bits.len())));
        }
        let slice = &self.bits[self.pos..end];
        self.pos = end;
        Ok(slice)
    }

    pub fn bit(&mut self) -> Result<bool> {
        Ok(self.take(1)?[0])
    }

    pub fn uint(&mut self, width: usize) -> Result<usize> {
        if width == 0 {
            return Ok(0);
        }
        Ok(self.take(width)?.load_le::<u64>() as usize)
    }

    pub fn bitmap(&mut self, len: usize) -> Result<Vec<bool>> {
        Ok(self.take(len)?.iter().by_vals().collect())
    }

    pub fn finish(self) -> Result<()> {
        if self.pos != self.bits.len() {
            return Err(Error::State(format!("{} unread bits", self.bits.len() - self.pos)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunReport {
    /// `None` when the pass budget ran out first.
    pub answer: Option<bool>,
    pub passes_used: usize,
    /// Largest serialized state over all pass boundaries, including the one
    /// before the first pass.
    pub max_state_bits: usize,
}

impl RunReport {
    pub fn answer_label(&self) -> &'static str {
        match self.answer {
            Some(true) => "1",
            Some(false) => "0",
            None => "undecided",
        }
    }

    pub fn csv_header() -> &'static str {
        "answer,passes_used,max_state_bits"
    }

    pub fn csv_row(&self) -> String {
        format!("{},{},{}", self.answer_label(), self.passes_used, self.max_state_bits)
    }
}

/// Saves, reloads and re-saves the state; returns its size in bits.
fn checkpoint(alg: &mut dyn StreamingAlgorithm, meta: &StreamMeta) -> Result<usize> {
    let mut first = StateWriter::new();
    alg.save_state(&mut first);
    let mut reader = StateReader::new(first.bits());
    alg.load_state(meta, &mut reader)?;
    reader.finish()?;
    let mut second = StateWriter::new();
    alg.save_state(&mut second);
    if first.bits() != second.bits() {
        return Err(Error::State(format!("{} state changed across a reload", alg.name())));
    }
    Ok(first.len())
}

/// Feeds the stream once per pass until the algorithm answers or
/// `pass_budget` passes have been made.
pub fn run_streaming(
    alg: &mut dyn StreamingAlgorithm,
    g: &GraphStream,
    pass_budget: usize,
) -> Result<RunReport> {
    let meta = StreamMeta::of(g);
    let early = alg.init(&meta);
    let mut max_state_bits = checkpoint(alg, &meta)?;
    if let Step::Answer(answer) = early {
        return Ok(RunReport {
            answer: Some(answer),
            passes_used: 0,
            max_state_bits,
        });
    }
    for pass in 1..=pass_budget {
        alg.begin_pass(pass);
        for &(a, b) in g.edges() {
            alg.observe_edge(a, b);
        }
        let step = alg.end_pass(pass);
        max_state_bits = max_state_bits.max(checkpoint(alg, &meta)?);
        if let Step::Answer(answer) = step {
            return Ok(RunReport {
                answer: Some(answer),
                passes_used: pass,
                max_state_bits,
            });
        }
    }
    Ok(RunReport {
        answer: None,
        passes_used: pass_budget,
        max_state_bits,
    })
}
