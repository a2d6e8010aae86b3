#ifndef SPQR_ERROR_HPP
#define SPQR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace spqr {

enum class Errc {
    InvalidHandle,
    SelfLoop,
    NotBiconnected,
    NotSeparationPair,
    BadBipartition,
    VirtualPairVertex,
    NotVirtualEdge,
    NotTwinnedPair,
    OccupiedAtVertex,
    VirtualVertex,
    TooFewNeighbors,
    AllocationNotUnique,
    ArityMismatch,
    CollapseNotBiconnected,
    TwinsRemain,
    NotSpqrTree,
    NotRigid,
    NonPlanarState,
    RotationUnavailable,
    UnknownVertex,
    DegreeMismatch,
    SizeGuard,
    BadInput,
};

/// Raised on violated operation preconditions and malformed inputs.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace spqr

#endif
