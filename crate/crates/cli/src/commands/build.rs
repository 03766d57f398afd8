use log::info;
use translit_core::align::EmConfig;
use translit_core::translit::{build_transliterator, save_bundle, BuildConfig};

use super::{read_lexicon, stem};
use crate::error::CliError;
use crate::BuildArgs;

pub fn run(a: BuildArgs) -> Result<(), CliError> {
    let language = a.language.clone().unwrap_or_else(|| stem(&a.lexicon));
    let lexicon = read_lexicon(&a.lexicon, &language)?;
    info!(
        "{language}: {} words, {} romanizations",
        lexicon.num_words(),
        lexicon.num_forms()
    );
    let config = BuildConfig {
        order: a.order.into(),
        em: EmConfig {
            max_iters: a.em_iters,
            tol: a.em_tol,
        },
    };
    let t = build_transliterator(&lexicon, &config).map_err(|e| CliError::model(&a.lexicon, e))?;
    let m = t.manifest();
    info!(
        "{language}: aligned {}/{} entries after {} EM iterations",
        m.aligned, m.entries, m.em_iterations
    );
    save_bundle(&t, &a.out_dir, !a.no_timestamp).map_err(|e| CliError::Model(e.to_string()))
}
