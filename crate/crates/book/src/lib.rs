//! Compiles the code listings of the guide in `book/` as doctests.

macro_rules! chapter {
    ($name:ident, $file:literal) => {
        #[doc = include_str!(concat!("../../../book/src/", $file))]
        pub mod $name {}
    };
}

chapter!(index, "index.md");
chapter!(scalars, "scalars.md");
chapter!(free_algebra, "free-algebra.md");
chapter!(normal_ordering, "normal-ordering.md");
chapter!(binomial, "binomial.md");
chapter!(realizations, "realizations.md");
chapter!(oracles, "oracles.md");
chapter!(cli, "cli.md");
