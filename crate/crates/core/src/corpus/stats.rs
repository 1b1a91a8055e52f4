use std::fmt;

use super::Corpus;

/// Entity-length buckets used for corpus statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LengthBucket {
    One,
    Two,
    Three,
    MoreThanThree,
}

impl LengthBucket {
    pub const ALL: [LengthBucket; 4] = [
        LengthBucket::One,
        LengthBucket::Two,
        LengthBucket::Three,
        LengthBucket::MoreThanThree,
    ];

    pub fn of(len: usize) -> Self {
        match len {
            0 | 1 => LengthBucket::One,
            2 => LengthBucket::Two,
            3 => LengthBucket::Three,
            _ => LengthBucket::MoreThanThree,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            LengthBucket::One => "N = 1",
            LengthBucket::Two => "N = 2",
            LengthBucket::Three => "N = 3",
            LengthBucket::MoreThanThree => "N > 3",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LengthHistogram {
    counts: [usize; 4],
}

impl LengthHistogram {
    pub fn from_lengths<I: IntoIterator<Item = usize>>(lengths: I) -> Self {
        let mut histogram = LengthHistogram::default();
        for len in lengths {
            histogram.counts[LengthBucket::of(len).slot()] += 1;
        }
        histogram
    }

    pub fn count(&self, bucket: LengthBucket) -> usize {
        self.counts[bucket.slot()]
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Share of all spans in `bucket`; zero for an empty histogram.
    pub fn fraction(&self, bucket: LengthBucket) -> f64 {
        match self.total() {
            0 => 0.0,
            total => self.count(bucket) as f64 / total as f64,
        }
    }

    /// Rows of `label, count, percentage` followed by the total, as tab
    /// separated text.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for LengthHistogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "length\tcount\tpercent")?;
        for bucket in LengthBucket::ALL {
            writeln!(
                f,
                "{}\t{}\t{:.2} %",
                bucket.label(),
                self.count(bucket),
                100.0 * self.fraction(bucket)
            )?;
        }
        writeln!(f, "Total\t{}", self.total())
    }
}

/// Histogram of entity lengths over every span in the corpus.
pub fn corpus_stats(corpus: &Corpus) -> LengthHistogram {
    LengthHistogram::from_lengths(
        corpus
            .sentences()
            .iter()
            .flat_map(|s| s.spans().iter().map(|span| span.len())),
    )
}
