#include "pfree/parallel.hpp"

#include <cstdlib>
#include <algorithm>
#include <string>

namespace pfree {

unsigned default_workers() {
  const char* env = std::getenv("PFREE_WORKERS");
  if (!env || !*env) return 1;
  try {
    const unsigned long v = std::stoul(env);
    return v == 0 ? 1U : static_cast<unsigned>(std::min(v, 256UL));
  } catch (const std::exception&) {
    return 1;
  }
}

}  // namespace pfree
