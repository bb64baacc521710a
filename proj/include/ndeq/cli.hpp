#pragma once

namespace ndeq {

/// Entry point behind the `ndeq` binary. Exit codes: 0 success,
/// 1 hypothesis failure, 2 numerical failure, 3 I/O or usage error.
int run_cli(int argc, const char* const* argv);

} // namespace ndeq
