#ifndef LINDFOREST_PARALLEL_HPP
#define LINDFOREST_PARALLEL_HPP

namespace lindforest {

// Number of threads used by the parallel kernels. Defaults to 1; the CLI
// raises it via --threads or LF_THREADS. Results are identical and
// identically ordered for any thread count.
void set_threads(int n);
int threads();

}  // namespace lindforest

#endif
