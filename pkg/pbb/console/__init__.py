"""The command line interface of pbb"""
