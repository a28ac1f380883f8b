/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef REPSCOPE_ERRORS_HPP
#define REPSCOPE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace repscope {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define REPSCOPE_DEFINE_ERROR(Name)                 \
    class Name : public Error {                     \
    public:                                         \
        using Error::Error;                         \
    }

// trace_model
REPSCOPE_DEFINE_ERROR(MalformedRecord);
REPSCOPE_DEFINE_ERROR(InvariantViolation);

// object_index
REPSCOPE_DEFINE_ERROR(OverlapError);
REPSCOPE_DEFINE_ERROR(UnknownObject);

// context_tree
REPSCOPE_DEFINE_ERROR(EmptyPath);
REPSCOPE_DEFINE_ERROR(UnknownContext);
REPSCOPE_DEFINE_ERROR(FrameTableMismatch);

// metrics
REPSCOPE_DEFINE_ERROR(NoComparisons);
REPSCOPE_DEFINE_ERROR(AlphaOutOfRange);
REPSCOPE_DEFINE_ERROR(TooFewObjects);

// workload / oracle
REPSCOPE_DEFINE_ERROR(ConfigInvalid);
REPSCOPE_DEFINE_ERROR(LabelMismatch);

// analyzer
REPSCOPE_DEFINE_ERROR(ConfigConflict);

#undef REPSCOPE_DEFINE_ERROR

}  // namespace repscope

#endif
