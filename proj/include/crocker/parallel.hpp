#pragma once

namespace crocker {

/// Worker count for OpenMP regions. requested > 0 is taken as-is,
/// otherwise the OpenMP default (or 1 in serial builds).
int effective_jobs(int requested);

} // namespace crocker
