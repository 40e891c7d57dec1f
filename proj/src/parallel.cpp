#include "symp/parallel.hpp"

#include <omp.h>

namespace symp {

void set_thread_count(int threads) {
  if (threads < 0) throw InvalidArgument("thread count must be nonnegative");
  if (threads > 0) omp_set_num_threads(threads);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace symp
