// Generated by pogo from simplc.json.
// Only text inside protected regions survives regeneration.
#include "SimPLC.hpp"

#include "tng/server/runtime.hpp"

int main(int argc, char** argv)
{
    return tng::server::server_main(argc, argv, {SimPLC::make_class()});
}
