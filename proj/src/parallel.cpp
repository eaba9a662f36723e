#include "hafnian/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace hafnian {

unsigned default_thread_count() {
  const char* env = std::getenv("HAFNIAN_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), value);
  if (ec != std::errc{} || *ptr != '\0' || value == 0) return 1;
  return value;
}

}  // namespace hafnian
