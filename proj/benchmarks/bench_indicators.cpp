// Benchmark: the OpenMP indicator kernels against the single-worker run on a
// generated corpus, verifying that the outputs are byte-identical while
// reporting throughput and speedup. On small corpora the brute-force reference
// is timed as well, as a baseline for what the indexed kernels buy.
//
//   bench_indicators [n_papers] [mean_out_degree] [max_workers] [seed]

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "disrupt/corpus.hpp"
#include "disrupt/indicators.hpp"
#include "disrupt/oracle.hpp"
#include "disrupt/synth.hpp"

using namespace disrupt;
using Clock = std::chrono::steady_clock;

namespace {

double run_seconds(const Corpus& corpus, int workers, std::string* digest) {
    IndicatorConfig cfg;
    cfg.workers = workers;
    const auto t0 = Clock::now();
    const IndicatorTable table = compute_all(corpus, cfg);
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    if (digest) {
        std::ostringstream os;
        write_indicator_table(table, corpus, os);
        *digest = os.str();
    }
    return dt;
}

}  // namespace

int main(int argc, char** argv) {
    GeneratorParams params;
    params.n_papers = argc > 1 ? std::atoll(argv[1]) : 20000;
    params.mean_out_degree = argc > 2 ? std::atof(argv[2]) : 15.0;
    const int max_workers = argc > 3 ? std::atoi(argv[3]) : omp_get_max_threads();
    params.seed = argc > 4 ? std::strtoull(argv[4], nullptr, 10) : 42;
    params.journals = 30;

    std::cout << "generating " << params.n_papers << " papers, mean out-degree "
              << params.mean_out_degree << ", seed " << params.seed << "\n";
    const auto tg = Clock::now();
    const GeneratedCorpus generated = generate_corpus(params);
    const Corpus corpus = to_corpus(generated);
    std::cout << "  " << corpus.edge_count() << " edges in "
              << std::chrono::duration<double>(Clock::now() - tg).count() << " s\n\n";

    std::string reference;
    const double serial = run_seconds(corpus, 1, &reference);
    std::cout << "workers  seconds  papers/s  speedup\n";
    {
        std::ostringstream os;
        os.precision(3);
        os << std::fixed << 1 << "        " << serial << "    "
           << static_cast<double>(corpus.size()) / serial << "  1.000";
        std::cout << os.str() << "\n";
    }
    for (int w = 2; w <= max_workers; w *= 2) {
        std::string digest;
        const double dt = run_seconds(corpus, w, &digest);
        if (digest != reference) {
            std::cerr << "OUTPUT MISMATCH at " << w << " workers\n";
            return 1;
        }
        std::ostringstream os;
        os.precision(3);
        os << std::fixed << w << "        " << dt << "    "
           << static_cast<double>(corpus.size()) / dt << "  " << serial / dt;
        std::cout << os.str() << "  (byte-identical)\n";
    }

    if (corpus.size() <= 2000) {
        const auto tb = Clock::now();
        for (size_t i = 0; i < corpus.size(); ++i)
            brute_force_indicators(corpus, static_cast<PaperIndex>(i), {});
        const double brute = std::chrono::duration<double>(Clock::now() - tb).count();
        std::cout << "\nbrute-force reference: " << brute << " s ("
                  << brute / serial << "x the indexed serial run)\n";
    }
    return 0;
}
